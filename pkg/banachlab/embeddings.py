from __future__ import annotations

import itertools
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from banachlab import EMBEDDING_PARAMETER
from banachlab.config import DEFAULT_CAPS, Caps
from banachlab.errors import CapExceededError, MalformedInputError
from banachlab.hamming import HammingSpace, KSubset, all_subsets, hamming_distance, johnson_distance, pair_count
from banachlab.norms import engine_for
from banachlab.sharding import run_sharded, split
from banachlab.spaces import (
    INF,
    LpN,
    Repeat,
    SpaceExpr,
    Sum,
    TsirelsonDual,
    Xpq,
    format_exponent,
    format_space,
    parse_space,
)
from banachlab.vectors import NormValue, SparseVec, parse_rational

log = logging.getLogger(__name__)


class EmbeddingSpec(ABC):
    k: int

    @property
    @abstractmethod
    def space(self) -> SpaceExpr:
        pass

    @abstractmethod
    def embed(self, m: KSubset) -> SparseVec:
        pass

    @abstractmethod
    def describe(self) -> str:
        pass


@dataclass(frozen=True)
class Prop73(EmbeddingSpec):
    p: Fraction
    k: int
    inner: SpaceExpr = TsirelsonDual()

    @property
    def space(self) -> SpaceExpr:
        return Sum(LpN(self.p, self.k), Repeat(self.inner))

    def embed(self, m: KSubset) -> SparseVec:
        return prop73_embed(self.p, self.k, m)

    def describe(self) -> str:
        return f"prop73:p={format_exponent(self.p)},k={self.k},inner={format_space(self.inner)}"


@dataclass(frozen=True)
class ArrayEmbed(EmbeddingSpec):
    array: Dict[Tuple[int, int], SparseVec] = field(hash=False)
    k: int
    ambient: SpaceExpr = TsirelsonDual()
    source: str = ""

    def __post_init__(self):
        engine = engine_for(self.ambient)
        for (i, j), vector in sorted(self.array.items()):
            if not 1 <= i <= self.k:
                raise MalformedInputError(f"array row {i} outside 1..{self.k}")
            value = engine.norm(vector)
            if value != 1:
                raise MalformedInputError(f"array entry x^({i})_{j} has norm {value}, expected 1")

    @property
    def space(self) -> SpaceExpr:
        return self.ambient

    def embed(self, m: KSubset) -> SparseVec:
        return array_embed(self.array, self.k, m)

    def describe(self) -> str:
        return f"array:{self.source}"


@dataclass(frozen=True)
class XpqBranch(EmbeddingSpec):
    p: Fraction
    q: Fraction
    k: int
    width: int = 8

    @property
    def space(self) -> SpaceExpr:
        return Xpq(self.p, self.q, self.k, self.width)

    def embed(self, m: KSubset) -> SparseVec:
        return sum(xpq_branch_vectors(self.p, self.q, self.k, m, self.width), SparseVec(depth=self.k + 1))

    def describe(self) -> str:
        return f"xpq:p={format_exponent(self.p)},q={format_exponent(self.q)},k={self.k},width={self.width}"


def prop73_embed(p, k: int, m: KSubset) -> SparseVec:  # pylint: disable=unused-argument
    if m.k != k:
        raise MalformedInputError(f"expected a {k}-subset, got {m}")
    return SparseVec({(i, m_i): 1 for i, m_i in enumerate(m, start=1)})


def array_embed(array: Dict[Tuple[int, int], SparseVec], k: int, m: KSubset) -> SparseVec:
    if m.k != k:
        raise MalformedInputError(f"expected a {k}-subset, got {m}")
    total = None
    for i, m_i in enumerate(m, start=1):
        index = k * m_i + i
        vector = array.get((i, index))
        if vector is None:
            raise MalformedInputError(f"array has no entry x^({i})_{index} required by {m}")
        total = vector if total is None else total + vector
    return total


def read_array(path: str) -> Tuple[Dict[Tuple[int, int], SparseVec], SpaceExpr]:
    """Rows ``i j path:value,...``; blank lines and ``#`` comments are skipped, an optional
    ``space <expr>`` line names the ambient space (``T*`` by default)."""
    array: Dict[Tuple[int, int], SparseVec] = {}
    ambient: SpaceExpr = TsirelsonDual()
    with open(path, encoding="utf8") as file:
        for number, line in enumerate(file, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("space "):
                ambient = parse_space(line[len("space ") :])
                continue
            terms = line.split(None, 2)
            if len(terms) != 3:
                raise MalformedInputError(f"{path}:{number}: expected 'i j path:value,...'")
            try:
                key = (int(terms[0]), int(terms[1]))
            except ValueError as e:
                raise MalformedInputError(f"{path}:{number}: array indices must be integers") from e
            if key in array:
                raise MalformedInputError(f"{path}:{number}: entry {key} given twice")
            array[key] = SparseVec.parse(terms[2])
    return array, ambient


def xpq_branch_vectors(p, q, k: int, m: KSubset, width: Optional[int] = None, caps: Caps = DEFAULT_CAPS):
    """The branch vectors ``x_{m|1}, ..., x_{m|k}`` of the tree in ``X_p^{q,k}``.

    ``x_{(m_1, ..., m_i)}`` sits in copy ``m_1`` of the tree one level down at
    ``(m_2 - m_1, ..., m_i - m_1)``, so its path is ``m_1+1, m_2-m_1+1, ..., m_i-m_{i-1}+1, 1, ..., 1``.
    """
    # pylint: disable=unused-argument
    width = caps.width if width is None else width
    if m.k != k:
        raise MalformedInputError(f"expected a {k}-subset, got {m}")
    gaps = [m[0]] + [b - a for a, b in zip(m, m.elements[1:])]
    if max(gaps) > width:
        raise CapExceededError("width", width, max(gaps), f"branch of {m} in xpq truncation")
    vectors = []
    for i in range(1, k + 1):
        path = tuple(gap + 1 for gap in gaps[:i]) + (1,) * (k + 1 - i)
        vectors.append(SparseVec({path: 1}))
    return vectors


def ell_infty_equivalence(
    vectors: Sequence[SparseVec], space: SpaceExpr, caps: Caps = DEFAULT_CAPS
) -> Tuple[NormValue, NormValue]:
    return sign_supremum(vectors, space, caps)[:2]


def sign_supremum(vectors: Sequence[SparseVec], space: SpaceExpr, caps: Caps = DEFAULT_CAPS):
    """``(min ||x_i||, max_a ||sum a_i x_i||, maximizing signs)`` over ``a`` in ``{-1, 1}^n``.

    The first sign is fixed to ``+1``: ``a`` and ``-a`` give the same norm.
    """
    if not vectors:
        raise MalformedInputError("no vectors given")
    caps.check("signs", len(vectors), "sign patterns")
    seen = set()
    for vector in vectors:
        paths = set(vector.support())
        if seen & paths:
            raise MalformedInputError("vectors must have pairwise disjoint supports")
        seen |= paths
    engine = engine_for(space, caps)
    low = min(engine.norm(vector) for vector in vectors)
    best = None
    for tail in itertools.product((1, -1), repeat=len(vectors) - 1):
        signs = (1,) + tail
        combination = sum((sign * vector for sign, vector in zip(signs, vectors)), SparseVec(depth=vectors[0].depth))
        value = engine.norm(combination)
        if best is None or value > best[0]:
            best = (value, signs)
    return low, best[0], best[1]


@dataclass(frozen=True)
class MetricSpec:
    kind: str
    space: Optional[SpaceExpr] = None

    def distance(self, m: KSubset, n: KSubset, caps: Caps = DEFAULT_CAPS) -> NormValue:
        if self.kind == "hamming":
            return Fraction(hamming_distance(m, n))
        if self.kind == "johnson":
            return johnson_distance(m, n)
        return HammingSpace(m.k, self.space).distance(m, n, caps)

    def describe(self) -> str:
        return self.kind if self.space is None else f"d_e:{format_space(self.space)}"


def parse_metric(text: str, space: Optional[SpaceExpr] = None) -> MetricSpec:
    kind, _, expression = text.partition(":")
    if kind in ("hamming", "johnson") and not expression:
        return MetricSpec(kind)
    if kind == "d_e":
        if expression:
            space = parse_space(expression)
        if space is None:
            raise MalformedInputError("metric d_e needs a generating space")
        return MetricSpec(kind, space)
    raise MalformedInputError(f"unknown metric '{text}', expected hamming, johnson or d_e:<space>")


def parse_embedding(text: str, caps: Caps = DEFAULT_CAPS) -> EmbeddingSpec:
    kind, _, parameters = text.partition(":")
    if kind == "array":
        array, ambient = read_array(parameters)
        k = max((i for i, _ in array), default=0)
        return ArrayEmbed(array, k, ambient, parameters)
    values = {}
    for term in split_top_level(parameters):
        match = EMBEDDING_PARAMETER.match(term)
        if match is None:
            raise MalformedInputError(f"'{term}' is not a name=value embedding parameter")
        values[match.group(1)] = match.group(2).strip()
    try:
        if kind == "prop73":
            inner = parse_space(values.pop("inner")) if "inner" in values else TsirelsonDual()
            spec = Prop73(_parse_exponent(values.pop("p")), int(values.pop("k")), inner)
        elif kind == "xpq":
            width = int(values.pop("width")) if "width" in values else caps.width
            spec = XpqBranch(
                _parse_exponent(values.pop("p")), _parse_exponent(values.pop("q")), int(values.pop("k")), width
            )
        else:
            raise MalformedInputError(f"unknown embedding '{kind}', expected prop73, xpq or array")
    except KeyError as e:
        raise MalformedInputError(f"embedding '{kind}' needs parameter {e}") from e
    except ValueError as e:
        if isinstance(e, MalformedInputError):
            raise
        raise MalformedInputError(f"embedding '{kind}' has a non-integer parameter: {e}") from e
    if values:
        raise MalformedInputError(f"unknown embedding parameters {', '.join(sorted(values))}")
    if spec.k < 1:
        raise MalformedInputError(f"k must be positive, got {spec.k}")
    return spec


def split_top_level(text: str) -> List[str]:
    terms, depth, start = [], 0, 0
    for position, char in enumerate(text):
        depth += {"(": 1, ")": -1}.get(char, 0)
        if char == "," and depth == 0:
            terms.append(text[start:position])
            start = position + 1
    terms.append(text[start:])
    return [term for term in terms if term.strip()]


def _parse_exponent(text: str):
    if text == "inf":
        return INF
    value = parse_rational(text)
    if value < 1:
        raise MalformedInputError(f"exponent {text} is below 1")
    return value


@dataclass
class DistortionReport:
    embedding: str
    metric: str
    n: int
    k: int
    lower: NormValue
    upper: NormValue
    argmin: Tuple[str, str]
    argmax: Tuple[str, str]
    pairs: int
    rows: List[Tuple[str, str, NormValue, NormValue, NormValue]] = field(default_factory=list)

    @property
    def distortion(self) -> NormValue:
        if self.lower == 0:
            return math.inf
        return self.upper / self.lower


def _ratio(image: NormValue, distance: NormValue) -> NormValue:
    if isinstance(image, Fraction) and isinstance(distance, Fraction):
        return image / distance
    return float(image) / float(distance)


def _distortion_shard(shard):
    spec, metric, n, firsts, caps, keep_rows = shard
    subsets = all_subsets(n, spec.k)
    images = [spec.embed(m) for m in subsets]
    engine = engine_for(spec.space, caps)
    low = high = None
    rows = []
    for first in firsts:
        for second in range(first + 1, len(subsets)):
            m, other = subsets[first], subsets[second]
            distance = metric.distance(m, other, caps)
            image = engine.norm(images[first] - images[second])
            ratio = _ratio(image, distance)
            if low is None or ratio < low[0]:
                low = (ratio, str(m), str(other))
            if high is None or ratio > high[0]:
                high = (ratio, str(m), str(other))
            if keep_rows:
                rows.append((str(m), str(other), distance, image, ratio))
    return low, high, rows


def measure_distortion(
    spec: EmbeddingSpec,
    metric: MetricSpec,
    n: int,
    caps: Caps = DEFAULT_CAPS,
    workers: int = 1,
    keep_rows: bool = False,
) -> DistortionReport:
    """Exact extreme ratios ``||f(m) - f(n)|| / d(m, n)`` over all distinct pairs of ``[n]^k``."""
    if n <= spec.k:
        raise MalformedInputError(f"[{n}]^{spec.k} has fewer than two points")
    caps.check("pairs", pair_count(n, spec.k), f"pairs of [{n}]^{spec.k}")
    firsts = list(range(math.comb(n, spec.k)))
    shards = [(spec, metric, n, chunk, caps, keep_rows) for chunk in split(firsts, max(1, workers))]
    low = high = None
    rows = []
    for shard_low, shard_high, shard_rows in run_sharded(_distortion_shard, shards, workers):
        if shard_low is not None and (low is None or shard_low[0] < low[0]):
            low = shard_low
        if shard_high is not None and (high is None or shard_high[0] > high[0]):
            high = shard_high
        rows.extend(shard_rows)
    pairs = math.comb(len(firsts), 2)
    log.info(f"{spec.describe()} on [{n}]^{spec.k}: {pairs} pairs, ratios in [{low[0]}, {high[0]}]")
    return DistortionReport(
        spec.describe(), metric.describe(), n, spec.k, low[0], high[0], low[1:], high[1:], pairs, rows
    )
