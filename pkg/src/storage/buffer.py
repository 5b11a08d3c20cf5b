# src/storage/buffer.py
from typing import Generic, List, TypeVar

import numpy as np

T = TypeVar("T")


class ReservoirBuffer(Generic[T]):
    """
    Fixed-size uniform sample of a stream (reservoir sampling).

    Holds every item until capacity is reached; after that each new item
    replaces a random slot with probability capacity / seen.
    """

    def __init__(self, capacity: int, seed: int = 0):
        if capacity <= 0:
            raise ValueError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._data: List[T] = []
        self._seen = 0
        self._rng = np.random.Generator(np.random.Philox(key=seed))

    def append(self, item: T) -> None:
        self._seen += 1
        if len(self._data) < self.capacity:
            self._data.append(item)
            return
        slot = int(self._rng.integers(0, self._seen))
        if slot < self.capacity:
            self._data[slot] = item

    def all(self) -> List[T]:
        return list(self._data)

    @property
    def seen(self) -> int:
        return self._seen

    @property
    def capped(self) -> bool:
        """True once items have been dropped."""
        return self._seen > self.capacity

    def __len__(self) -> int:
        return len(self._data)
