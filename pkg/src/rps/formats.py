"""Line-oriented input formats, pattern text form, and batch assembly.

Formats:

  tx        one plain itemset per line, whitespace-separated tokens, with an
            optional trailing "|label":       a b c|sports
  wtx       one weighted itemset per line, "items:TU:weights" where TU must
            equal the summed weights:         2 3 5:10:2 3 5
  seq-spmf  one sequence per line in SPMF notation, "-1" ends each itemset
            and "-2" ends the line, with an optional leading "label|":
                                              greet|1 2 -1 3 -1 -2

Pattern text is "{a,b}" for itemset patterns and "<{a}{b,c}>" for sequence
patterns, tokens in item-id (interning) order.  Snapshot files hold one
"norm<TAB>pattern<TAB>timestamp" line per reservoir slot; lines starting
with '#' are comments.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, TextIO

from .errors import ParseError
from .model import (
    Batch,
    Catalog,
    Instance,
    Pattern,
    PlainItemset,
    Sequence,
    WeightedItemset,
    canon_items,
    weighted_itemset,
)

FORMATS = ("tx", "wtx", "seq-spmf")

_WEIGHT_SUM_TOL = 1e-6
_GROUP_RE = re.compile(r"\{([^{}]*)\}")


def parse_instance(
    line: str, fmt: str, catalog: Catalog
) -> tuple[Instance, str | None]:
    """One non-blank line -> (instance, label or None)."""
    if fmt == "tx":
        return _parse_tx(line, catalog)
    if fmt == "wtx":
        return _parse_wtx(line, catalog)
    if fmt == "seq-spmf":
        return _parse_seq(line, catalog)
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _parse_tx(line: str, catalog: Catalog) -> tuple[PlainItemset, str | None]:
    body, sep, label = line.partition("|")
    tokens = body.split()
    if not tokens:
        raise ParseError("empty itemset")
    return PlainItemset(catalog.intern_all(tokens)), (label.strip() if sep else None)


def _parse_wtx(line: str, catalog: Catalog) -> tuple[WeightedItemset, str | None]:
    body, sep, label = line.partition("|")
    parts = body.split(":")
    if len(parts) != 3:
        raise ParseError(f"expected items:TU:weights, got {body.strip()!r}")
    tokens = parts[0].split()
    weight_tokens = parts[2].split()
    if not tokens:
        raise ParseError("empty itemset")
    if len(tokens) != len(weight_tokens):
        raise ParseError(
            f"{len(tokens)} items but {len(weight_tokens)} weights"
        )
    try:
        declared = float(parts[1])
        weights = [float(w) for w in weight_tokens]
    except ValueError as exc:
        raise ParseError(f"bad number in {body.strip()!r}: {exc}") from None
    total = math.fsum(weights)
    if not math.isclose(total, declared, rel_tol=_WEIGHT_SUM_TOL, abs_tol=_WEIGHT_SUM_TOL):
        raise ParseError(
            f"declared total utility {declared} != sum of weights {total}"
        )
    pairs = [(catalog.intern(t), w) for t, w in zip(tokens, weights)]
    if len({i for i, _ in pairs}) != len(pairs):
        raise ParseError(f"duplicate item in weighted itemset {parts[0].strip()!r}")
    return weighted_itemset(pairs), (label.strip() if sep else None)


def _parse_seq(line: str, catalog: Catalog) -> tuple[Sequence, str | None]:
    head, sep, rest = line.partition("|")
    label = head.strip() if sep else None
    body = rest if sep else line
    tokens = body.split()
    if not tokens:
        raise ParseError("empty sequence")
    elements: list[tuple[int, ...]] = []
    current: list[int] = []
    terminated = False
    for tok in tokens:
        if terminated:
            raise ParseError(f"content after end marker: {tok!r}")
        if tok == "-1":
            if not current:
                raise ParseError("empty itemset before -1")
            elements.append(canon_items(current))
            current = []
        elif tok == "-2":
            if current:
                elements.append(canon_items(current))
                current = []
            terminated = True
        else:
            current.append(catalog.intern(tok))
    if not terminated:
        raise ParseError("sequence line is missing the -2 end marker")
    if not elements:
        raise ParseError("empty sequence")
    return Sequence(tuple(elements)), label


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def serialize_instance(
    z: Instance, fmt: str, catalog: Catalog, label: str | None = None
) -> str:
    """Inverse of parse_instance, up to whitespace."""
    if fmt == "tx":
        if not isinstance(z, PlainItemset):
            raise ParseError(f"tx holds plain itemsets, not {type(z).__name__}")
        line = " ".join(catalog.token(i) for i in z.items)
        return f"{line}|{label}" if label else line
    if fmt == "wtx":
        if not isinstance(z, WeightedItemset):
            raise ParseError(f"wtx holds weighted itemsets, not {type(z).__name__}")
        items = " ".join(catalog.token(i) for i in z.items)
        weights = " ".join(_num(w) for w in z.weights)
        line = f"{items}:{_num(math.fsum(z.weights))}:{weights}"
        return f"{line}|{label}" if label else line
    if fmt == "seq-spmf":
        if not isinstance(z, Sequence):
            raise ParseError(f"seq-spmf holds sequences, not {type(z).__name__}")
        chunks = []
        for e in z.elements:
            chunks.extend(catalog.token(i) for i in e)
            chunks.append("-1")
        chunks.append("-2")
        line = " ".join(chunks)
        return f"{label}|{line}" if label else line
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def pattern_text(x: Pattern, catalog: Catalog) -> str:
    groups = [
        "{" + ",".join(catalog.token(i) for i in e) + "}" for e in x.elements
    ]
    if len(groups) == 1:
        return groups[0]
    return "<" + "".join(groups) + ">"


def parse_pattern(text: str, catalog: Catalog) -> Pattern:
    t = text.strip()
    if t.startswith("<") and t.endswith(">"):
        inner = t[1:-1]
    elif t.startswith("{") and t.endswith("}"):
        inner = t
    else:
        raise ParseError(f"bad pattern text {text!r}")
    groups = _GROUP_RE.findall(inner)
    if not groups or "".join(f"{{{g}}}" for g in groups) != inner.replace(" ", ""):
        raise ParseError(f"bad pattern text {text!r}")
    elements = []
    for g in groups:
        tokens = [tok.strip() for tok in g.split(",") if tok.strip()]
        if not tokens:
            raise ParseError(f"empty itemset in pattern text {text!r}")
        elements.append(catalog.intern_all(tokens))
    return Pattern(tuple(elements))


def read_instances(
    lines: Iterable[str], fmt: str, catalog: Catalog
) -> Iterator[tuple[int, Instance | None, str | None]]:
    """Yield (line_no, instance, label); instance is None for blank lines.

    Comment lines ('#') are skipped outright; blank lines are reported so
    batch assembly can treat them as separators.  Parse errors are re-raised
    with the 1-based line number attached.
    """
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            continue
        if not stripped:
            yield line_no, None, None
            continue
        try:
            z, label = parse_instance(stripped, fmt, catalog)
        except ParseError as exc:
            if exc.line_no is None:
                raise ParseError(str(exc), line_no) from None
            raise
        yield line_no, z, label


def iter_batches(
    lines: Iterable[str],
    fmt: str,
    catalog: Catalog,
    batch_size: int | str = "marker",
    timestamps: str = "ordinal",
) -> Iterator[Batch]:
    """Group parsed instances into timestamped batches.

    timestamps="ordinal": batch timestamps are 1, 2, 3, ...; batch_size is
    either an int (chunk every N instances, blank lines ignored) or
    "marker" (a blank line closes the batch).

    timestamps="explicit": each line starts with a timestamp column and
    consecutive lines with equal timestamps form one batch; batch_size is
    ignored and timestamps must not decrease.
    """
    if timestamps == "explicit":
        yield from _iter_batches_explicit(lines, fmt, catalog)
        return
    if timestamps != "ordinal":
        raise ParseError(f"unknown timestamp mode {timestamps!r}")
    if isinstance(batch_size, str) and batch_size != "marker":
        try:
            batch_size = int(batch_size)
        except ValueError:
            raise ParseError(f"bad batch size {batch_size!r}") from None
    if isinstance(batch_size, int) and batch_size < 1:
        raise ParseError(f"batch size must be >= 1, got {batch_size}")

    pending: list[Instance] = []
    labels: list[str | None] = []
    ordinal = 0

    def flush() -> Batch | None:
        nonlocal ordinal
        if not pending:
            return None
        ordinal += 1
        batch = _make_batch(float(ordinal), pending, labels)
        pending.clear()
        labels.clear()
        return batch

    for _, z, label in read_instances(lines, fmt, catalog):
        if z is None:
            if batch_size == "marker":
                done = flush()
                if done is not None:
                    yield done
            continue
        pending.append(z)
        labels.append(label)
        if isinstance(batch_size, int) and len(pending) == batch_size:
            yield flush()
    done = flush()
    if done is not None:
        yield done


def _iter_batches_explicit(
    lines: Iterable[str], fmt: str, catalog: Catalog
) -> Iterator[Batch]:
    pending: list[Instance] = []
    labels: list[str | None] = []
    current_t: float | None = None

    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        first, _, rest = stripped.partition(" ")
        try:
            t = float(first)
        except ValueError:
            raise ParseError(f"bad timestamp {first!r}", line_no) from None
        try:
            z, label = parse_instance(rest.strip(), fmt, catalog)
        except ParseError as exc:
            if exc.line_no is None:
                raise ParseError(str(exc), line_no) from None
            raise
        if current_t is not None and t != current_t:
            if t < current_t:
                raise ParseError(
                    f"timestamp {t} decreases below {current_t}", line_no
                )
            yield _make_batch(current_t, pending, labels)
            pending, labels = [], []
        current_t = t
        pending.append(z)
        labels.append(label)
    if pending:
        yield _make_batch(current_t, pending, labels)


def _make_batch(
    t: float, instances: list[Instance], labels: list[str | None]
) -> Batch:
    packed = (
        tuple(lbl or "" for lbl in labels)
        if any(lbl is not None for lbl in labels)
        else None
    )
    return Batch(t, tuple(instances), packed)


def write_snapshot(
    out: TextIO,
    entries: Iterable[tuple[float, Pattern]],
    catalog: Catalog,
    header: str | None = None,
) -> None:
    """One norm<TAB>pattern<TAB>timestamp line per slot."""
    if header:
        out.write(f"# {header}\n")
    for t, x in entries:
        out.write(f"{x.norm}\t{pattern_text(x, catalog)}\t{_num(t)}\n")


def read_snapshot(
    lines: Iterable[str], catalog: Catalog
) -> list[tuple[float, Pattern]]:
    """Inverse of write_snapshot; comments and blank lines are skipped."""
    entries: list[tuple[float, Pattern]] = []
    for line_no, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 3:
            raise ParseError(
                f"expected norm<TAB>pattern<TAB>timestamp, got {stripped!r}", line_no
            )
        try:
            norm = int(parts[0])
            t = float(parts[2])
        except ValueError as exc:
            raise ParseError(str(exc), line_no) from None
        x = parse_pattern(parts[1], catalog)
        if x.norm != norm:
            raise ParseError(
                f"norm column says {norm} but pattern has norm {x.norm}", line_no
            )
        entries.append((t, x))
    return entries
