class Verdict:
    """A boolean answer carrying the evidence behind it.

    Truthiness and ``==`` against a plain bool use ``holds``; unpacking
    gives ``(holds, witness)``.
    """

    __slots__ = ("holds", "witness")

    def __init__(self, holds, witness=None):
        self.holds = bool(holds)
        self.witness = witness

    def __bool__(self):
        return self.holds

    def __eq__(self, other):
        if isinstance(other, bool):
            return self.holds == other
        if isinstance(other, Verdict):
            return self.holds == other.holds
        return NotImplemented

    def __hash__(self):
        return hash(self.holds)

    def __iter__(self):
        yield self.holds
        yield self.witness

    def __repr__(self):
        return f"Verdict({self.holds}, {self.witness!r})"
