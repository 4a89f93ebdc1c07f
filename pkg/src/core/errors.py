from enum import Enum
from typing import Optional


class InterlanguageError(Exception):
    """Base class for every error the engine raises on purpose."""

    code = "ERROR"


class LexiconErrorCode(str, Enum):
    SYNTAX = "SYNTAX"
    UNKNOWN_KEY = "UNKNOWN_KEY"
    DUPLICATE_ENTRY = "DUPLICATE_ENTRY"
    DANGLING_PFORM = "DANGLING_PFORM"
    DANGLING_LINK = "DANGLING_LINK"
    UNKNOWN_ENTRY = "UNKNOWN_ENTRY"
    UNKNOWN_ROLE = "UNKNOWN_ROLE"
    UNKNOWN_FEATURE = "UNKNOWN_FEATURE"
    SEM_MISMATCH = "SEM_MISMATCH"
    UNSUPPORTED_IDIOM = "UNSUPPORTED_IDIOM"


class LexiconError(InterlanguageError):
    def __init__(self, code: LexiconErrorCode, message: str, line: Optional[int] = None) -> None:
        self.code = code.value
        self.kind = code
        self.message = message
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{code.value}{where}: {message}")


class TranslationError(InterlanguageError):
    code = "NO_TRANSLATION"

    def __init__(self, what: str, value: str) -> None:
        self.what = what
        self.value = value
        super().__init__(f"{self.code}: no link for {what} '{value}'")


class UnknownWordError(InterlanguageError):
    code = "UNKNOWN_WORD"

    def __init__(self, token: str, position: int) -> None:
        self.token = token
        self.position = position
        super().__init__(f"{self.code}({token}, {position})")


class UnknownRuleError(InterlanguageError):
    code = "UNKNOWN_RULE"

    def __init__(self, rule_id: str) -> None:
        self.rule_id = rule_id
        super().__init__(f"{self.code}: {rule_id}")


class PathError(InterlanguageError):
    code = "BAD_PATH"


class NotationError(InterlanguageError):
    code = "BAD_NOTATION"

    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class ConfigError(InterlanguageError):
    code = "BAD_CONFIG"
