"""Vertex generation for correlation polytopes.

A term table selects which probabilities, expectations, or joint terms enter
the bounds; evaluating the terms at every two-valued state gives the
V-representation whose hull produces the facet inequalities ("conditions of
possible experience").  A separate generator produces the noncontextual
vertices: per-context products of unconstrained sign assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .exact_hull import HRep, VRep, parse_dd
from .logic_core import Logic, enumerate_states, load_builtin, parity_certificate

MAX_SWEEP_ATOMS = 26

KINDS = ("prob", "joint_prob", "expect", "joint_expect", "context_product")


@dataclass(frozen=True)
class TermSpec:
    label: str
    kind: str
    atoms: tuple  # atom indices (a context index for context_product)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown term kind {self.kind!r}")
        if self.kind in ("joint_prob", "joint_expect") and len(set(self.atoms)) != len(self.atoms):
            raise ValueError(f"term {self.label}: joint atoms must be distinct")


@dataclass(frozen=True)
class TermTable:
    logic: Logic
    terms: tuple

    def __post_init__(self):
        labels = [t.label for t in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate term labels")


def parse_terms(text: str, logic: Logic) -> TermTable:
    """Parse the term table format: one `term <label> <kind> <atoms...>` line
    per term."""
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "term" or len(parts) < 4:
            raise ValueError(f"line {lineno}: expected `term <label> <kind> <atoms...>`")
        label, kind = parts[1], parts[2]
        if kind == "context_product":
            atoms = (int(parts[3]),)
        else:
            atoms = tuple(logic.atom_index(nm) for nm in parts[3:])
        terms.append(TermSpec(label, kind, atoms))
    return TermTable(logic, tuple(terms))


def _evaluate(term: TermSpec, values):
    v = values
    if term.kind == "prob":
        return Fraction(v[term.atoms[0]])
    if term.kind == "joint_prob":
        p = 1
        for a in term.atoms:
            p *= v[a]
        return Fraction(p)
    if term.kind == "expect":
        return Fraction(2 * v[term.atoms[0]] - 1)
    if term.kind == "joint_expect":
        p = 1
        for a in term.atoms:
            p *= 2 * v[a] - 1
        return Fraction(p)
    raise ValueError(f"term kind {term.kind} is not state-evaluable")


def gen_state_vertices(logic: Logic, table: TermTable) -> VRep:
    """One point per two-valued state, in state order; duplicates retained
    (deduplication is the hull's job)."""
    if not table.terms:
        raise ValueError("empty term table would give a zero-dimensional polytope")
    if any(t.kind == "context_product" for t in table.terms):
        raise ValueError("context_product terms are not state-evaluable")
    states = enumerate_states(logic)
    if not states:
        cert = parity_certificate(logic)
        why = (f" (parity certificate: {cert.context_count} contexts, "
               f"every atom in an even number of them)" if cert else "")
        raise ValueError(f"logic {logic.name} admits no two-valued state{why}")
    points = tuple(tuple(_evaluate(t, s.values) for t in table.terms)
                   for s in states)
    return VRep(len(table.terms), points)


def gen_noncontextual_vertices(logic: Logic, force=False) -> VRep:
    """Per-context products of all 2^n sign assignments, deduplicated.

    Admissibility is ignored entirely; the coordinates live in {-1,+1}^contexts."""
    n = len(logic.atoms)
    if n > MAX_SWEEP_ATOMS and not force:
        raise ValueError(f"{n} atoms exceeds the 2^{MAX_SWEEP_ATOMS} sweep guard "
                         "(pass force=True to override)")
    masks = [0] * len(logic.contexts)
    for ci, c in enumerate(logic.contexts):
        for a in c.atoms:
            masks[ci] |= 1 << a
    points = set()
    for assign in range(1 << n):
        # product over a context is -1 iff it contains an odd number of -1s
        points.add(tuple(Fraction(1 - 2 * ((assign & m).bit_count() & 1))
                         for m in masks))
    return VRep(len(logic.contexts), tuple(sorted(points)))


SCENARIOS = (
    "one-var", "two-var-prob", "two-var-expect", "three-var-prob",
    "three-var-expect", "bwf-2x2", "chsh-2x2", "epr-2x3-full",
    "epr-2x3-joints", "pentagon-prob", "pentagon-pair-expect-KCBS",
    "pentagon-all-pair-expect", "bub-stairs", "pentagon-nonintertwining",
    "bug-prob", "bug-edge-expect", "cabello-contextual",
)


# How each scenario's V-representation is regenerated from first principles:
# (logic name, term preset) for state-vertex scenarios, (logic name, None)
# for noncontextual sign-sweep scenarios.
SCENARIO_RECIPES = {
    "one-var": ("one-obs", "one-var"),
    "two-var-prob": ("two-obs", "two-var-prob"),
    "two-var-expect": ("two-obs", "two-var-expect"),
    "three-var-prob": ("three-obs", "three-var-prob"),
    "three-var-expect": ("three-obs", "three-var-expect"),
    "bwf-2x2": ("epr-2x2", "bwf-prob"),
    "chsh-2x2": ("epr-2x2", "chsh-expect"),
    "epr-2x3-full": ("epr-2x3", "epr-2x3-full"),
    "epr-2x3-joints": ("epr-2x3", "epr-2x3-joints"),
    "pentagon-prob": ("pentagon", "pentagon-prob"),
    "pentagon-pair-expect-KCBS": ("pentagon", "pentagon-pair-expect"),
    "pentagon-all-pair-expect": ("pentagon", "pentagon-all-pair-expect"),
    "bub-stairs": ("pentagon", "bub-stairs"),
    "pentagon-nonintertwining": ("pentagon", "pentagon-nonintertwining"),
    "bug-prob": ("specker-bug", "bug-prob"),
    "bug-edge-expect": ("specker-bug", "bug-edge-expect"),
    "cabello-contextual": ("cabello18", None),
}


def load_preset_terms(name: str, logic: Logic) -> TermTable:
    try:
        text = (resources.files("correlpoly.data") / "terms" / f"{name}.terms").read_text()
    except FileNotFoundError:
        raise ValueError(f"unknown term preset {name!r}") from None
    return parse_terms(text, logic)


def scenario_vertices(name: str) -> VRep:
    """Recompute a scenario's V-representation from its logic and term table
    (independently of the bundled golden files)."""
    logic_name, preset = SCENARIO_RECIPES[name]
    logic = load_builtin(logic_name)
    if preset is None:
        return gen_noncontextual_vertices(logic)
    return gen_state_vertices(logic, load_preset_terms(preset, logic))


def _golden(name, suffix):
    return (resources.files("correlpoly.data") / "golden" / (name + suffix)).read_text()


def builtin_scenario(name: str):
    """The bundled (V-representation, golden H-representation) pair for a
    named scenario."""
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}")
    v = parse_dd(_golden(name, ".ext"))
    h = parse_dd(_golden(name, ".ine"))
    assert isinstance(v, VRep) and isinstance(h, HRep)
    return v, h
