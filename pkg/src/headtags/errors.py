"""Exception types shared across the toolkit.

Every error raised by library code derives from HeadtagsError so callers can
catch the whole family at pipeline boundaries (the CLI does exactly that).
"""

from __future__ import annotations


class HeadtagsError(Exception):
    """Base class for all toolkit errors."""


class UnsupportedLanguage(HeadtagsError):
    def __init__(self, code: str, line_no: int | None = None):
        self.code = code
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"unsupported language code {code!r}{where}")


# -- corpus ------------------------------------------------------------------

class CorpusError(HeadtagsError):
    pass


class MalformedLine(CorpusError):
    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        self.detail = detail
        msg = f"malformed record at line {line_no}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class MissingField(CorpusError):
    def __init__(self, field: str, line_no: int):
        self.field = field
        self.line_no = line_no
        super().__init__(f"missing field {field!r} at line {line_no}")


class RatioSum(CorpusError):
    def __init__(self, err: float):
        self.err = err
        super().__init__(f"split ratios must sum to 1 (off by {err:g})")


class EmptyCorpus(CorpusError):
    pass


# -- metrics -----------------------------------------------------------------

class MetricError(HeadtagsError):
    pass


class LengthMismatch(MetricError):
    pass


class EmptyReference(MetricError):
    pass


class EmptyInput(MetricError):
    pass


# -- retrieval ---------------------------------------------------------------

class RetrievalError(HeadtagsError):
    pass


class DimMismatch(RetrievalError):
    def __init__(self, got: int, expected: int):
        self.got = got
        self.expected = expected
        super().__init__(f"embedding dim mismatch: got {got}, expected {expected}")


class EmptyQueries(RetrievalError):
    pass


class NoImages(RetrievalError):
    pass


class NoCaptions(RetrievalError):
    pass


class MissingSelection(RetrievalError):
    pass


class ProviderError(RetrievalError):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"embedding provider failed: {detail}")


class MissingEmbedding(RetrievalError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"no embedding stored for key {key!r}")


# -- instruction -------------------------------------------------------------

class InstructionError(HeadtagsError):
    pass


class OutOfRange(InstructionError):
    pass


class EmptyContent(InstructionError):
    pass


class EmptyField(InstructionError):
    pass


class TagContainsDelimiter(InstructionError):
    def __init__(self, tag: str):
        self.tag = tag
        super().__init__(f"tag {tag!r} contains the comma delimiter")


class MissingMarker(InstructionError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"output is missing the {which} marker")
