"""Persistent file formats: sentence inputs, annotation-state JSON, gold TSV.

All encoders are deterministic (stable JSON key order, LF line endings,
UTF-8), so equal values produce identical bytes and exports can be compared
bit-for-bit. Decoders attach a location to every failure: a line number for
tabular formats, a JSON path for JSON documents. Unknown top-level JSON
fields are carried through save/load untouched; unknown fields inside known
structures are rejected so annotation data stays trustworthy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    ConfidenceOutOfRange,
    DuplicateId,
    EmptyInput,
    MalformedInput,
    SchemaViolation,
    UnknownSentence,
    VersionUnsupported,
)
from .model import (
    FactSynset,
    GoldBenchmark,
    Highlight,
    NerTag,
    PosTag,
    SlotTemplate,
    SlotToken,
    SystemExtraction,
    TaggedSentence,
    Token,
    TripleTemplate,
    validate_template_for_sentence,
)
from .shorthand import format_slot_shorthand, parse_triple_shorthand

FORMAT_VERSION = "1"

_KNOWN_STATE_FIELDS = frozenset(
    {"version", "sentences", "synsets", "cursor", "meta"}
)


@dataclass(frozen=True)
class AnnotationState:
    """The whole annotation session: sentences, synsets, cursor, metadata."""

    sentences: tuple[TaggedSentence, ...]
    synsets: dict[str, tuple[FactSynset, ...]]
    cursor: Optional[str] = None
    meta: dict[str, str] = field(default_factory=dict)
    version: str = FORMAT_VERSION
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(
            self, "synsets", {k: tuple(v) for k, v in self.synsets.items()}
        )
        shadowed = set(self.extra) & _KNOWN_STATE_FIELDS
        if shadowed:
            raise ValueError(f"extra fields shadow known fields: {sorted(shadowed)}")
        known = {s.id for s in self.sentences}
        if self.cursor is not None and self.cursor not in known:
            raise ValueError(f"cursor {self.cursor!r} names no sentence")
        for sid, groups in self.synsets.items():
            if sid not in known:
                raise ValueError(f"synsets reference unknown sentence {sid!r}")
            ids = [g.id for g in groups]
            if len(set(ids)) != len(ids):
                raise ValueError(f"duplicate synset ids for sentence {sid!r}")

    def sentence_by_id(self, sid: str) -> TaggedSentence:
        for s in self.sentences:
            if s.id == sid:
                return s
        raise KeyError(sid)

    def to_benchmark(self) -> GoldBenchmark:
        return GoldBenchmark(sentences=self.sentences, synsets=self.synsets)


def benchmark_to_state(benchmark: GoldBenchmark, **kwargs) -> AnnotationState:
    return AnnotationState(
        sentences=benchmark.sentences, synsets=dict(benchmark.synsets), **kwargs
    )


# -- sentence inputs ---------------------------------------------------------

def load_sentences(data: bytes) -> list[tuple[str, str]]:
    """Read raw sentences: plain text (one per line) or a JSON id/text array."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(
            f"sentence file is not UTF-8: {exc}", f"byte {exc.start}"
        ) from exc
    if text.lstrip().startswith("["):
        located = _sentences_from_json(text)
    else:
        located = [
            (f"s{n}", line.strip(), f"line {n}")
            for n, line in enumerate(
                (l for l in text.splitlines() if l.strip()), start=1
            )
        ]
    if not located:
        raise EmptyInput("no sentences in input")
    seen = set()
    for sid, _, where in located:
        if sid in seen:
            raise DuplicateId(f"duplicate sentence id {sid!r}", where)
        seen.add(sid)
    return [(sid, sentence_text) for sid, sentence_text, _ in located]


def _sentences_from_json(text: str) -> list[tuple[str, str, str]]:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    if not isinstance(items, list):
        raise MalformedInput("expected a JSON array of {id, text} objects")
    located = []
    for i, item in enumerate(items):
        path = f"$[{i}]"
        if not isinstance(item, dict):
            raise MalformedInput("expected an {id, text} object", path)
        sid, sentence_text = item.get("id"), item.get("text")
        if not isinstance(sid, str) or not sid:
            raise MalformedInput("missing or empty 'id'", path)
        if not isinstance(sentence_text, str) or not sentence_text.strip():
            raise MalformedInput("missing or empty 'text'", path)
        located.append((sid, sentence_text, path))
    return located


# -- annotation-state JSON ---------------------------------------------------

def _token_to_json(token: Token) -> dict:
    return {
        "index": token.index,
        "text": token.text,
        "pos": token.pos.value,
        "ner": token.ner.value,
        "highlight": token.highlight.value,
    }


def sentence_to_json(sentence: TaggedSentence) -> dict:
    return {
        "id": sentence.id,
        "raw": sentence.raw,
        "language": sentence.language,
        "tokens": [_token_to_json(t) for t in sentence.tokens],
    }


def _slot_to_json(slot: SlotTemplate) -> list:
    return [
        [{"token_index": st.token_index, "optional": st.optional} for st in alt]
        for alt in slot.alternatives
    ]


def _synset_to_json(synset: FactSynset) -> dict:
    return {
        "id": synset.id,
        "triples": [
            {
                "subject": _slot_to_json(t.subject),
                "predicate": _slot_to_json(t.predicate),
                "object": _slot_to_json(t.object),
            }
            for t in synset.triples
        ],
    }


def state_to_json(state: AnnotationState) -> dict:
    doc = {
        "version": state.version,
        "cursor": state.cursor,
        "meta": dict(state.meta),
        "sentences": [sentence_to_json(s) for s in state.sentences],
        "synsets": {
            sid: [_synset_to_json(g) for g in groups]
            for sid, groups in state.synsets.items()
        },
    }
    doc.update(state.extra)
    return doc


def save_state(state: AnnotationState) -> bytes:
    """Serialize deterministically: stable key order, 2-space indent, LF."""
    return (
        json.dumps(state_to_json(state), ensure_ascii=False, sort_keys=True, indent=2)
        + "\n"
    ).encode("utf-8")


class _JsonReader:
    """Schema checks that name the JSON path of whatever is wrong."""

    @staticmethod
    def expect(condition: bool, message: str, path: str):
        if not condition:
            raise SchemaViolation(message, path)

    @classmethod
    def str_field(cls, obj: dict, key: str, path: str, allow_empty: bool = False) -> str:
        cls.expect(key in obj, f"missing field {key!r}", path)
        value = obj[key]
        cls.expect(isinstance(value, str), f"{key!r} must be a string", f"{path}.{key}")
        if not allow_empty:
            cls.expect(bool(value), f"{key!r} must be non-empty", f"{path}.{key}")
        return value

    @classmethod
    def list_field(cls, obj: dict, key: str, path: str) -> list:
        cls.expect(key in obj, f"missing field {key!r}", path)
        value = obj[key]
        cls.expect(isinstance(value, list), f"{key!r} must be an array", f"{path}.{key}")
        return value

    @classmethod
    def enum_field(cls, obj: dict, key: str, enum_type, path: str):
        value = cls.str_field(obj, key, path)
        try:
            return enum_type(value)
        except ValueError:
            raise SchemaViolation(
                f"{key!r} must be one of {[e.value for e in enum_type]}",
                f"{path}.{key}",
            ) from None


def sentence_from_json(obj, path: str = "$") -> TaggedSentence:
    r = _JsonReader
    r.expect(isinstance(obj, dict), "sentence must be an object", path)
    sid = r.str_field(obj, "id", path)
    raw = r.str_field(obj, "raw", path)
    language = obj.get("language", "en")
    r.expect(isinstance(language, str), "'language' must be a string", f"{path}.language")
    tokens = []
    token_items = r.list_field(obj, "tokens", path)
    r.expect(bool(token_items), "'tokens' must be non-empty", f"{path}.tokens")
    for i, item in enumerate(token_items):
        token_path = f"{path}.tokens[{i}]"
        r.expect(isinstance(item, dict), "token must be an object", token_path)
        r.expect(
            isinstance(item.get("index"), int) and not isinstance(item.get("index"), bool),
            "'index' must be an integer",
            f"{token_path}.index",
        )
        unknown = set(item) - {"index", "text", "pos", "ner", "highlight"}
        r.expect(not unknown, f"unknown token fields {sorted(unknown)}", token_path)
        try:
            tokens.append(
                Token(
                    index=item["index"],
                    text=r.str_field(item, "text", token_path),
                    pos=r.enum_field(item, "pos", PosTag, token_path),
                    ner=r.enum_field(item, "ner", NerTag, token_path),
                    highlight=r.enum_field(item, "highlight", Highlight, token_path),
                )
            )
        except ValueError as exc:
            raise SchemaViolation(str(exc), token_path) from exc
    try:
        return TaggedSentence(id=sid, raw=raw, tokens=tuple(tokens), language=language)
    except ValueError as exc:
        raise SchemaViolation(str(exc), path) from exc


def _slot_from_json(obj, path: str) -> SlotTemplate:
    r = _JsonReader
    r.expect(isinstance(obj, list) and obj, "slot must be a non-empty array", path)
    alternatives = []
    for a, alt in enumerate(obj):
        alt_path = f"{path}[{a}]"
        r.expect(isinstance(alt, list) and alt, "alternative must be a non-empty array", alt_path)
        slot_tokens = []
        for t, item in enumerate(alt):
            st_path = f"{alt_path}[{t}]"
            r.expect(isinstance(item, dict), "slot token must be an object", st_path)
            index = item.get("token_index")
            r.expect(
                isinstance(index, int) and not isinstance(index, bool) and index >= 0,
                "'token_index' must be a non-negative integer",
                f"{st_path}.token_index",
            )
            optional = item.get("optional", False)
            r.expect(isinstance(optional, bool), "'optional' must be a boolean", f"{st_path}.optional")
            unknown = set(item) - {"token_index", "optional"}
            r.expect(not unknown, f"unknown slot-token fields {sorted(unknown)}", st_path)
            slot_tokens.append(SlotToken(index, optional))
        alternatives.append(tuple(slot_tokens))
    try:
        return SlotTemplate(tuple(alternatives))
    except ValueError as exc:
        raise SchemaViolation(str(exc), path) from exc


def _synset_from_json(obj, path: str) -> FactSynset:
    r = _JsonReader
    r.expect(isinstance(obj, dict), "synset must be an object", path)
    gid = r.str_field(obj, "id", path)
    triple_items = r.list_field(obj, "triples", path)
    r.expect(bool(triple_items), "'triples' must be non-empty", f"{path}.triples")
    triples = []
    for i, item in enumerate(triple_items):
        triple_path = f"{path}.triples[{i}]"
        r.expect(isinstance(item, dict), "triple must be an object", triple_path)
        unknown = set(item) - {"subject", "predicate", "object"}
        r.expect(not unknown, f"unknown triple fields {sorted(unknown)}", triple_path)
        for key in ("subject", "predicate", "object"):
            r.expect(key in item, f"missing field {key!r}", triple_path)
        triples.append(
            TripleTemplate(
                subject=_slot_from_json(item["subject"], f"{triple_path}.subject"),
                predicate=_slot_from_json(item["predicate"], f"{triple_path}.predicate"),
                object=_slot_from_json(item["object"], f"{triple_path}.object"),
            )
        )
    return FactSynset(id=gid, triples=tuple(triples))


def load_state(data: bytes) -> AnnotationState:
    """Parse and validate annotation-state JSON (inverse of save_state)."""
    r = _JsonReader
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaViolation(f"not valid JSON: {exc}", "$") from exc
    r.expect(isinstance(doc, dict), "state must be a JSON object", "$")
    version = r.str_field(doc, "version", "$")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(
            f"format version {version!r} is not supported (expected {FORMAT_VERSION!r})"
        )

    sentences = tuple(
        sentence_from_json(item, f"$.sentences[{i}]")
        for i, item in enumerate(r.list_field(doc, "sentences", "$"))
    )
    by_id = {s.id: s for s in sentences}
    if len(by_id) != len(sentences):
        raise SchemaViolation("duplicate sentence ids", "$.sentences")

    synsets_obj = doc.get("synsets", {})
    r.expect(isinstance(synsets_obj, dict), "'synsets' must be an object", "$.synsets")
    synsets: dict[str, tuple[FactSynset, ...]] = {}
    for sid, items in synsets_obj.items():
        path = f"$.synsets[{sid!r}]"
        r.expect(sid in by_id, f"synsets reference unknown sentence {sid!r}", path)
        r.expect(isinstance(items, list), "sentence synsets must be an array", path)
        groups = tuple(
            _synset_from_json(item, f"{path}[{i}]") for i, item in enumerate(items)
        )
        ids = [g.id for g in groups]
        r.expect(len(set(ids)) == len(ids), "duplicate synset ids", path)
        for i, synset in enumerate(groups):
            for t, template in enumerate(synset.triples):
                try:
                    validate_template_for_sentence(template, by_id[sid])
                except ValueError as exc:
                    raise SchemaViolation(
                        str(exc), f"{path}[{i}].triples[{t}]"
                    ) from exc
        synsets[sid] = groups

    cursor = doc.get("cursor")
    if cursor is not None:
        r.expect(isinstance(cursor, str), "'cursor' must be a string", "$.cursor")
        r.expect(cursor in by_id, f"cursor names unknown sentence {cursor!r}", "$.cursor")

    meta_obj = doc.get("meta", {})
    r.expect(isinstance(meta_obj, dict), "'meta' must be an object", "$.meta")
    for key, value in meta_obj.items():
        r.expect(isinstance(value, str), "meta values must be strings", f"$.meta.{key}")

    extra = {k: v for k, v in doc.items() if k not in _KNOWN_STATE_FIELDS}
    return AnnotationState(
        sentences=sentences,
        synsets=synsets,
        cursor=cursor,
        meta=dict(meta_obj),
        version=version,
        extra=extra,
    )


# -- gold TSV ----------------------------------------------------------------

def export_tsv(state: AnnotationState) -> bytes:
    """One line per triple template, slots rendered back into shorthand."""
    lines = []
    for sentence in state.sentences:
        for synset in state.synsets.get(sentence.id, ()):
            for template in synset.triples:
                lines.append(
                    "\t".join(
                        (
                            sentence.id,
                            synset.id,
                            format_slot_shorthand(template.subject, sentence),
                            format_slot_shorthand(template.predicate, sentence),
                            format_slot_shorthand(template.object, sentence),
                        )
                    )
                    + "\n"
                )
    return "".join(lines).encode("utf-8")


def import_gold_tsv(
    data: bytes, sentences: Sequence[TaggedSentence]
) -> GoldBenchmark:
    """Rebuild a benchmark from exported TSV (inverse of export_tsv)."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(
            f"gold TSV is not UTF-8: {exc}", f"byte {exc.start}"
        ) from exc
    by_id = {s.id: s for s in sentences}
    grouped: dict[str, dict[str, list[TripleTemplate]]] = {}
    for n, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        location = f"line {n}"
        fields = line.split("\t")
        if len(fields) != 5:
            raise MalformedInput(
                f"expected 5 tab-separated fields, got {len(fields)}", location
            )
        sid, gid, subject, predicate, object_ = fields
        if sid not in by_id:
            raise UnknownSentence(f"unknown sentence id {sid!r}", location)
        template = parse_triple_shorthand(
            subject, predicate, object_, by_id[sid], location=location
        )
        grouped.setdefault(sid, {}).setdefault(gid, []).append(template)
    synsets = {
        sid: tuple(
            FactSynset(id=gid, triples=tuple(triples))
            for gid, triples in groups.items()
        )
        for sid, groups in grouped.items()
    }
    return GoldBenchmark(sentences=tuple(sentences), synsets=synsets)


# -- system extractions ------------------------------------------------------

def load_system_extractions(data: bytes) -> list[SystemExtraction]:
    """Read system extraction TSV: sentence, subject, predicate, object[, confidence]."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(
            f"extraction file is not UTF-8: {exc}", f"byte {exc.start}"
        ) from exc
    extractions = []
    for n, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        location = f"line {n}"
        fields = line.split("\t")
        if len(fields) not in (4, 5):
            raise MalformedInput(
                f"expected 4 or 5 tab-separated fields, got {len(fields)}", location
            )
        confidence = None
        if len(fields) == 5:
            try:
                confidence = float(fields[4])
            except ValueError:
                raise MalformedInput(
                    f"confidence {fields[4]!r} is not a number", location
                ) from None
            if not 0.0 <= confidence <= 1.0:
                raise ConfidenceOutOfRange(
                    f"confidence {confidence} outside [0, 1]", location
                )
        try:
            extractions.append(
                SystemExtraction(
                    sentence_id=fields[0],
                    subject=fields[1],
                    predicate=fields[2],
                    object=fields[3],
                    confidence=confidence,
                )
            )
        except ValueError as exc:
            raise MalformedInput(str(exc), location) from exc
    return extractions


def dump_system_extractions(extractions: Sequence[SystemExtraction]) -> bytes:
    """Inverse of load_system_extractions; used by the pruning command."""
    lines = []
    for e in extractions:
        fields = [e.sentence_id, e.subject, e.predicate, e.object]
        if e.confidence is not None:
            fields.append(format(e.confidence, "g"))
        lines.append("\t".join(fields) + "\n")
    return "".join(lines).encode("utf-8")
