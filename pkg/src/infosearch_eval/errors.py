"""Exception types shared across the package."""


class InfoSearchError(Exception):
    """Base class for all package errors."""


# --- ingest ---

class MalformedLine(InfoSearchError):
    def __init__(self, path: str, line_no: int, detail: str = ""):
        self.path = path
        self.line_no = line_no
        self.detail = detail
        super().__init__(f"{path}:{line_no}: malformed line{': ' + detail if detail else ''}")


class IntegrityViolation(InfoSearchError):
    pass


class DuplicateDoc(InfoSearchError):
    def __init__(self, query_key: str, doc_id: str):
        self.query_key = query_key
        self.doc_id = doc_id
        super().__init__(f"duplicate doc {doc_id!r} in list for {query_key!r}")


class RankGap(InfoSearchError):
    def __init__(self, query_key: str):
        self.query_key = query_key
        super().__init__(f"rank gap in list for {query_key!r}")


class ScoreOrderViolation(InfoSearchError):
    def __init__(self, query_key: str):
        self.query_key = query_key
        super().__init__(f"score order contradicts rank order for {query_key!r}")


# --- metrics ---

class EmptyRelevantSet(InfoSearchError):
    pass


class EmptyGroup(InfoSearchError):
    pass


class EmptyInput(InfoSearchError):
    pass


class InvariantBreach(InfoSearchError):
    pass


class NonPositiveIdeal(InfoSearchError):
    pass


# --- harness ---

class MissingList(InfoSearchError):
    def __init__(self, query_key: str, mode: str):
        self.query_key = query_key
        self.mode = mode
        super().__init__(f"no {mode} list for {query_key!r}")


class DegenerateReversed(InfoSearchError):
    pass


# --- bm25 ---

class EmptyCorpus(InfoSearchError):
    pass


# --- rerank adapter ---

class EmptyPassages(InfoSearchError):
    pass


class TooManyPassages(InfoSearchError):
    pass


class Unparseable(InfoSearchError):
    def __init__(self, raw: str):
        self.raw = raw
        super().__init__(f"no valid ranking identifiers found in: {raw!r}")


class BadPermutation(InfoSearchError):
    pass


class MissingScore(InfoSearchError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"no score for candidate {doc_id!r}")


class ScoreOutOfRange(InfoSearchError):
    pass
