"""Exception hierarchy for lattice and arrow-set operations."""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(LatticeError):
    pass


class CycleError(LatticeError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"cover relation has a cycle: {' -> '.join(map(str, self.cycle))}")


class NotALattice(LatticeError):
    def __init__(self, x, y, what="meet"):
        self.pair = (x, y)
        self.what = what
        super().__init__(f"elements {x!r} and {y!r} have no unique {what}")


class NonCover(LatticeError):
    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"declared cover {x!r} -> {y!r} is implied transitively")


class UnknownElement(LatticeError):
    pass


class NotComparable(LatticeError):
    def __init__(self, src, tgt):
        self.pair = (src, tgt)
        super().__init__(f"{src!r} -> {tgt!r} is not an arrow (source is not below target)")


class NotBelowTarget(LatticeError):
    pass


class NotAboveSource(LatticeError):
    pass


class MixedLattices(LatticeError):
    pass


class NotTransferSystem(LatticeError):
    pass


class NotCotransferSystem(LatticeError):
    pass


class NotTransferOrCotransfer(LatticeError):
    pass


class NotDecomposable(LatticeError):
    pass


class PreconditionViolated(LatticeError):
    def __init__(self, which, reason):
        self.which = which
        super().__init__(f"{which}: {reason}")


class NotAModelStructure(LatticeError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotWeakEquivalenceSet(LatticeError):
    pass


class NotInAFW(LatticeError):
    pass


class TooLarge(LatticeError):
    pass
