"""Value types shared between the analysis modules."""


class DegreeSequence(object):
    """Exact degrees d_N for N = start, start + 1, ...

    ``exact`` holds one flag per value; a False entry means the degree is
    only an upper bound because a common factor may have been missed.
    ``source`` names the route that produced the values.
    """

    def __init__(self, values, exact=None, start=1, source=""):
        self.values = tuple(int(v) for v in values)
        if exact is None:
            exact = (True,) * len(self.values)
        self.exact = tuple(bool(flag) for flag in exact)
        if len(self.exact) != len(self.values):
            raise ValueError("Need one exactness flag per degree")
        self.start = start
        self.source = source

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def __eq__(self, other):
        if isinstance(other, DegreeSequence):
            return (self.values, self.exact, self.start) == (
                other.values,
                other.exact,
                other.start,
            )
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return "DegreeSequence({!r}, start={}, source={!r})".format(
            list(self.values), self.start, self.source
        )

    @property
    def indices(self):
        return range(self.start, self.start + len(self.values))

    @property
    def all_exact(self):
        return all(self.exact)

    def items(self):
        return zip(self.indices, self.values, self.exact)

    def with_zero(self):
        """Prepend deg(f^0) = 1 when the sequence starts at N = 1."""
        if self.start != 1:
            return self
        return DegreeSequence(
            (1,) + self.values, (True,) + self.exact, start=0, source=self.source
        )
