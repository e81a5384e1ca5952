"""Exception hierarchy shared by all matchlab modules."""


class MatchlabError(Exception):
    """Base class for every error raised by matchlab."""


class InvalidWordError(MatchlabError, ValueError):
    """A letter lies outside 1..k, or k itself is out of range."""


class UndefinedDecompositionError(MatchlabError, ValueError):
    """tail/head/pred requested for the identity."""


class NotANodeError(MatchlabError, KeyError):
    """A word was used as a node of a colour system it does not belong to."""


class InvalidPruneError(MatchlabError, ValueError):
    pass


class DepthBudgetExceeded(MatchlabError, RuntimeError):
    """An oracle was queried beyond its configured depth budget."""


class BallTooLarge(MatchlabError, RuntimeError):
    pass


class ModelError(MatchlabError, ValueError):
    """A graph violates the proper edge colouring requirement."""


class ContractViolation(MatchlabError, ValueError):
    """An algorithm received a ball of the wrong radius or alphabet."""


class TemplateError(MatchlabError, ValueError):
    """A template or colour picker breaks its invariants."""


class InvalidPickerError(TemplateError):
    pass


class CertificateError(MatchlabError, ValueError):
    """A certificate is malformed or refers to an unknown algorithm."""


class InternalError(MatchlabError, RuntimeError):
    """A guarantee that holds for every algorithm was broken: a bug."""


class NotPrefixClosed(MatchlabError, ValueError):
    """A finite word set is missing the predecessor of one of its words."""
