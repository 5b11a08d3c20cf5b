# scripts/fetch_datasets.py
"""
Download the public networks used by the data report into data/raw/.

Checksums are left empty: fill them in after a first trusted download and
later runs will verify the files.
"""

import gzip
import hashlib
import shutil
import sys
import urllib.request
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from src.config import RAW_DATA_DIR

DATASETS = {
    "enron": {"url": "https://snap.stanford.edu/data/email-Enron.txt.gz", "sha256": None},
    "gowalla": {"url": "https://snap.stanford.edu/data/loc-gowalla_edges.txt.gz", "sha256": None},
    "hep": {"url": "https://snap.stanford.edu/data/ca-HepTh.txt.gz", "sha256": None},
    "oregon": {"url": "https://snap.stanford.edu/data/oregon1_010526.txt.gz", "sha256": None},
    # PGP web of trust: no stable direct link; place the edge list at data/raw/pgp.txt
    "pgp": {"url": None, "sha256": None},
}


def sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def fetch(name: str, entry: dict) -> None:
    target = RAW_DATA_DIR / f"{name}.txt"
    if target.exists():
        print(f"✓ {name}: already present at {target}")
    elif entry["url"] is None:
        print(f"  {name}: download manually and save as {target}")
        return
    else:
        archive = RAW_DATA_DIR / f"{name}.txt.gz"
        print(f"  {name}: downloading {entry['url']}")
        urllib.request.urlretrieve(entry["url"], archive)
        with gzip.open(archive, "rb") as src, open(target, "wb") as dst:
            shutil.copyfileobj(src, dst)
        archive.unlink()
        print(f"✓ {name}: saved to {target}")
    if entry["sha256"]:
        actual = sha256(target)
        mark = "✓" if actual == entry["sha256"] else "✗"
        print(f"{mark} {name}: sha256 {actual}")


def main():
    RAW_DATA_DIR.mkdir(parents=True, exist_ok=True)
    names = sys.argv[1:] or list(DATASETS)
    for name in names:
        if name not in DATASETS:
            print(f"✗ unknown dataset '{name}'; choose from {', '.join(DATASETS)}")
            continue
        fetch(name, DATASETS[name])


if __name__ == "__main__":
    main()
