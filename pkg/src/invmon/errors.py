"""Exception types shared across the package."""


class InvMonError(Exception):
    pass


class ParseError(InvMonError, ValueError):
    pass


class UnknownGenerator(ParseError):
    pass


class MalformedToken(ParseError):
    pass


class AlphabetMismatch(InvMonError):
    pass


class NotInjective(InvMonError, ValueError):
    pass


class NotIdempotent(InvMonError, ValueError):
    pass


class NameClash(InvMonError, ValueError):
    pass


class InconsistentEquality(InvMonError):
    """Stephen-based equality tests contradicted each other (internal bug)."""


class NotFinishedWithinBudget(InvMonError):
    """Enumeration of a presented monoid did not close within the budget."""


class BackendMismatch(InvMonError):
    pass


class NotAClosedPath(InvMonError, ValueError):
    pass


class NotInKernelComponent(InvMonError, ValueError):
    pass


class NotComposable(InvMonError, ValueError):
    pass


class AnchorMismatch(InvMonError, ValueError):
    pass


class LiftFailure(InvMonError):
    pass
