class BanachLabError(Exception):
    pass


class MalformedInputError(BanachLabError, ValueError):
    pass


class SpaceSyntaxError(MalformedInputError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class SpaceSemanticError(MalformedInputError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class PreconditionError(MalformedInputError):
    pass


class CapExceededError(BanachLabError):
    def __init__(self, cap: str, limit: int, actual: int, what: str = ""):
        detail = f" ({what})" if what else ""
        super().__init__(f"cap '{cap}' exceeded{detail}: {actual} > {limit}")
        self.cap = cap
        self.limit = limit
        self.actual = actual


class VerificationError(BanachLabError):
    pass
