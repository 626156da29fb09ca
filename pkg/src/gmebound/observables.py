"""Local-observable decompositions of the matrix elements a witness consumes.

Every element is written over the generalized Gell-Mann basis:

* symmetric      s{j}:{k}  ->  |j><k| + |k><j|
* antisymmetric  a{j}:{k}  ->  -i|j><k| + i|k><j|
* diagonal       d{l}      ->  sqrt(2/(l(l+1))) diag(1,...,1,-l,0,...)
* identity       id

Single-site identities used throughout (j < k):

    |k><j| = (s - i a)/2          |j><k| = (s + i a)/2
    |j><j| = id/d + sum_l (d_l[j,j]/2) d_l

A *setting* is the tuple of per-site labels to measure; identity slots are
wildcards that fold into any fuller setting, so the reported settings are the
maximal label tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import InvalidInputError
from .indices import IndexPair, MultiIndex
from .states import DensityMatrix
from .witness import CompiledWitness

Label = str | None  # None marks an identity slot
Term = tuple[float, tuple[Label, ...]]


@dataclass(frozen=True)
class GellMannOp:
    """One basis operator for a single d-level site."""

    kind: str  # "id" | "s" | "a" | "d"
    d: int
    j: int = 0
    k: int = 0

    @property
    def label(self) -> str:
        if self.kind == "id":
            return "id"
        if self.kind == "d":
            return f"d{self.j}"
        return f"{self.kind}{self.j}:{self.k}"

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.d, self.d), dtype=complex)
        if self.kind == "id":
            return np.eye(self.d, dtype=complex)
        if self.kind == "s":
            m[self.j, self.k] = 1.0
            m[self.k, self.j] = 1.0
        elif self.kind == "a":
            m[self.j, self.k] = -1.0j
            m[self.k, self.j] = 1.0j
        elif self.kind == "d":
            l = self.j
            scale = math.sqrt(2.0 / (l * (l + 1)))
            for i in range(l):
                m[i, i] = scale
            m[l, l] = -l * scale
        else:
            raise InvalidInputError(f"unknown operator kind {self.kind!r}")
        return m


def gell_mann_basis(d: int) -> list[GellMannOp]:
    """The d**2 operators: identity, all s/a pairs, the d-1 diagonal ones."""
    ops = [GellMannOp("id", d)]
    for j in range(d):
        for k in range(j + 1, d):
            ops.append(GellMannOp("s", d, j, k))
    for j in range(d):
        for k in range(j + 1, d):
            ops.append(GellMannOp("a", d, j, k))
    for l in range(1, d):
        ops.append(GellMannOp("d", d, l))
    return ops


@lru_cache(maxsize=None)
def op_matrix(label: Label, d: int) -> np.ndarray:
    if label is None or label == "id":
        return np.eye(d, dtype=complex)
    if label.startswith("d"):
        return GellMannOp("d", d, int(label[1:])).matrix()
    kind = label[0]
    j, k = label[1:].split(":")
    return GellMannOp(kind, d, int(j), int(k)).matrix()


def term_operator(labels: tuple[Label, ...], d: int) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for lab in labels:
        out = np.kron(out, op_matrix(lab, d))
    return out


# ---------------------------------------------------------------------------
# single-site factors


def _site_factor(a: int, b: int, d: int) -> list[tuple[complex, Label]]:
    """Decomposition of |b><a| on one site (bra digit a, ket digit b)."""
    if a == b:
        terms: list[tuple[complex, Label]] = [(1.0 / d, None)]
        for l in range(1, d):
            diag = GellMannOp("d", d, l).matrix()[a, a].real
            if diag != 0.0:
                terms.append((diag / 2.0, f"d{l}"))
        return terms
    lo, hi = (a, b) if a < b else (b, a)
    sign = -1.0j if a < b else 1.0j  # |hi><lo| carries -i a, |lo><hi| carries +i a
    return [(0.5, f"s{lo}:{hi}"), (sign * 0.5, f"a{lo}:{hi}")]


def _product_terms(eta1: MultiIndex, eta2: MultiIndex) -> list[tuple[complex, tuple[Label, ...]]]:
    """<eta1| rho |eta2> = sum z_k <O_k>: all tensor terms with complex weights."""
    factors = [
        _site_factor(a, b, eta1.d) for a, b in zip(eta1.digits, eta2.digits)
    ]
    out = []
    for combo in product(*factors):
        z = 1.0 + 0.0j
        labels = []
        for coeff, lab in combo:
            z *= coeff
            labels.append(lab)
        out.append((z, tuple(labels)))
    return out


def decompose_offdiagonal(pair: IndexPair, part: str) -> list[Term]:
    """Real or imaginary part of <eta1| rho |eta2> over local observables."""
    if part not in ("re", "im"):
        raise InvalidInputError(f"part must be 're' or 'im', got {part!r}")
    take = (lambda z: z.real) if part == "re" else (lambda z: z.imag)
    terms = []
    for z, labels in _product_terms(pair.first, pair.second):
        c = take(z)
        if c != 0.0:
            terms.append((c, labels))
    return terms


def decompose_diagonal(eta: MultiIndex) -> list[Term]:
    """rho_eta_eta over local observables (all weights real)."""
    return [(z.real, labels) for z, labels in _product_terms(eta, eta) if z.real != 0.0]


def reconstruct(terms: list[Term], rho: DensityMatrix) -> float:
    """sum_k c_k Tr(rho O_k); recovers the decomposed quantity."""
    total = 0.0
    for coeff, labels in terms:
        op = term_operator(labels, rho.d)
        total += coeff * float(np.trace(rho.matrix @ op).real)
    return total


# ---------------------------------------------------------------------------
# measurement plan for a compiled witness


@dataclass(frozen=True)
class PlanElement:
    kind: str  # "offdiag_re" | "offdiag_im" | "diag"
    indices: tuple[str, ...]
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class DecompositionPlan:
    n: int
    d: int
    elements: tuple[PlanElement, ...]
    settings: tuple[tuple[Label, ...], ...]

    @property
    def element_count(self) -> int:
        return len(self.elements)

    @property
    def setting_count(self) -> int:
        return len(self.settings)

    def settings_as_strings(self) -> list[list[str]]:
        return [[lab if lab is not None else "id" for lab in s] for s in self.settings]


def _folds_into(key: tuple[Label, ...], other: tuple[Label, ...]) -> bool:
    """True when every committed slot of ``key`` is matched by ``other``."""
    if key == other:
        return False
    return all(a is None or a == b for a, b in zip(key, other))


def plan_settings(w: CompiledWitness, include_imag: bool = False) -> DecompositionPlan:
    """Elements the witness needs and the folded local measurement settings.

    Diagonals enter through the noise images and through I(R) entries with a
    nonzero multiplicity; off-diagonals need only their real part unless
    ``include_imag`` asks for full complex reconstruction.
    """
    elements: list[PlanElement] = []
    for pair in w.r:
        elements.append(
            PlanElement(
                "offdiag_re",
                (str(pair.first), str(pair.second)),
                tuple(decompose_offdiagonal(pair, "re")),
            )
        )
        if include_imag:
            elements.append(
                PlanElement(
                    "offdiag_im",
                    (str(pair.first), str(pair.second)),
                    tuple(decompose_offdiagonal(pair, "im")),
                )
            )

    diag_strings: set[MultiIndex] = set()
    for pair in w.r:
        for img in w.noise_images[pair]:
            diag_strings.update(img.as_tuple())
    diag_strings.update(eta for eta in w.index_set if w.n_eta[eta] > 0)
    for eta in sorted(diag_strings):
        elements.append(PlanElement("diag", (str(eta),), tuple(decompose_diagonal(eta))))

    keys = {labels for el in elements for _, labels in el.terms}
    maximal = [k for k in keys if not any(_folds_into(k, other) for other in keys)]
    maximal.sort(key=lambda t: tuple(x if x is not None else "" for x in t))
    return DecompositionPlan(
        n=w.n, d=w.d, elements=tuple(elements), settings=tuple(maximal)
    )
