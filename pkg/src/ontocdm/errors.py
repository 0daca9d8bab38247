"""Exception types raised across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error this package raises on bad input."""


class UnknownName(ToolkitError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown name: {name!r}")


class MalformedInput(ToolkitError):
    def __init__(self, position, detail: str):
        self.position = position
        self.detail = detail
        where = f" at {position[0]}:{position[1]}" if position else ""
        super().__init__(f"malformed input{where}: {detail}")


class UnsupportedConstruct(ToolkitError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unsupported construct: {name}")


class UnresolvedReference(ToolkitError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"reference to undeclared name: {name!r}")


class SchemaViolation(ToolkitError):
    def __init__(self, path: str, detail: str):
        self.path = path
        self.detail = detail
        super().__init__(f"schema violation at {path}: {detail}")


class UnresolvedRoot(ToolkitError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"root is not a declared class: {name!r}")


class DanglingDomainOrRange(ToolkitError):
    def __init__(self, property_name: str):
        self.property_name = property_name
        super().__init__(f"property {property_name!r} has no usable domain/range")


class InconsistentCardinalities(ToolkitError):
    def __init__(self, subject: str, detail: str = ""):
        self.subject = subject
        extra = f" ({detail})" if detail else ""
        super().__init__(f"inconsistent cardinalities on {subject}{extra}")


class UnknownSubject(ToolkitError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"repair subject not in model: {name!r}")


class RepairConflict(ToolkitError):
    def __init__(self, detail: str):
        super().__init__(f"conflicting repairs: {detail}")


class DegenerateInput(ToolkitError):
    def __init__(self, detail: str):
        super().__init__(f"degenerate input: {detail}")


class LexiconUnavailable(ToolkitError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"lexicon file not readable: {path}")
