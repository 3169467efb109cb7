from dataclasses import dataclass, field


@dataclass
class OccurrenceSet:
    """Sorted 1-based start positions of a pattern, split by how they were found."""

    positions: list = field(default_factory=list)
    primary_count: int = 0
    secondary_count: int = 0

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __bool__(self):
        return bool(self.positions)
