"""gpdlab exceptions."""


class GpdlabError(Exception):
    """Base exception for gpdlab."""


class ConfigError(GpdlabError):
    """Configuration error."""


class SchemaError(GpdlabError):
    """Artifact does not conform to its JSON schema.

    ``pointer`` is a JSON pointer to the offending value ("" for the root).
    """

    def __init__(self, message: str, pointer: str = "") -> None:
        self.message = message
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


class InvalidStructureError(GpdlabError):
    """A groupoid, functor or natural isomorphism violates its laws."""


class FunctorialityError(InvalidStructureError):
    """A family of groupoids is not strictly functorial."""


class BoundaryMismatchError(GpdlabError):
    """Composed or curried morphisms disagree on a shared boundary."""


class UnsupportedEndpointError(GpdlabError):
    """Operation needs concrete endpoints but got a symbolic bang endpoint."""


class ArityError(GpdlabError):
    """Polynomial has the wrong arity class for the requested operation."""


class BudgetExceededError(GpdlabError):
    """A search ran out of its configured step budget.

    Raised instead of answering "no", so a negative result is never a guess.
    """

    def __init__(self, what: str, budget: int) -> None:
        self.what = what
        self.budget = budget
        super().__init__(f"{what}: search budget of {budget} steps exceeded")
