"""Counterexample search: hypotheses hold but the conclusion fails.

Each conjecture pairs a hypothesis test with a conclusion that returns
``None`` when it holds or a witness dict when it does not.  Instances are
visited in corpus order (state count, then canonical family, then measured
variants), followed by the named fixtures, so the first witness is stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .config import DEFAULT, Limits
from .system import StatePropertySystem, axiom_A_holds

Hypothesis = Callable[[StatePropertySystem, Limits], bool]
Conclusion = Callable[[StatePropertySystem, Limits], "dict | None"]


@dataclass(frozen=True)
class Conjecture:
    name: str
    statement: str
    hypothesis: Hypothesis
    conclusion: Conclusion
    expect_witness: bool = False


@dataclass
class SearchResult:
    conjecture: str
    checked: int
    qualifying: int
    instance: StatePropertySystem | None = None
    witness: dict | None = None
    skipped: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.instance is not None

    def to_json(self) -> dict:
        from .io import dump_instance

        return {
            "conjecture": self.conjecture,
            "checked": self.checked,
            "qualifying": self.qualifying,
            "found": self.found,
            "instance": None if self.instance is None else self.instance.name,
            "witness": self.witness,
            "instance_data": None if self.instance is None else dump_instance(self.instance),
            "skipped": self.skipped,
        }


# ------------------------------------------------------------------ helpers


def _msp(level) -> Hypothesis:
    from .superposition import check_msp

    return lambda s, lim: check_msp(s, level, lim).holds


def _a(s, lim):
    return axiom_A_holds(s)


def _a3(s, lim):
    return _a(s, lim) and _msp(3)(s, lim)


def _abc(s, lim):
    from .probability import abc_hold

    return abc_hold(s)


def _first_failure(report) -> dict | None:
    for v in report:
        if v.fails:
            return {"axiom": v.name, **(v.witness or {})}
    return None


def _verdict(v) -> dict | None:
    return None if not v.fails else {"axiom": v.name, **(v.witness or {})}


def _projective(s, lim):
    from .geometry import build_geometry

    _, rep = build_geometry(s)
    return _first_failure(rep)


def _modular(s, lim):
    from .geometry import check_projective_lattice

    return _first_failure(check_projective_lattice(s, lim))


def _two_msp(s, lim):
    from .superposition import check_msp

    return _verdict(check_msp(s, 2, lim))


def _theorem4(s, lim):
    from .superposition import verify_theorem4

    return _first_failure(verify_theorem4(s, lim))


def _centclas(s, lim):
    from .sectors import check_classical

    return _first_failure(check_classical(s))


def _kappa(s, lim):
    from .sectors import check_kappa

    return _first_failure(check_kappa(s, lim))


def _sectors(s, lim):
    from .sectors import check_sector_clopen, sectors

    dec = sectors(s, lim)
    return _first_failure(dec.report) or _first_failure(check_sector_clopen(s, lim))


def _bicommutant(s, lim):
    from .probability import verify_bicommutant

    return _first_failure(verify_bicommutant(s, lim))


def _orthocompl(s, lim):
    from .probability import extend_orthocomplement

    return _first_failure(extend_orthocomplement(s)[1])


def _certificates(s, lim):
    from .mackey import certify

    for name in ("mackey-lattice", "regular", "orthosystem", "ortholattice"):
        cert = certify(s, name, lim)
        if cert.failures:
            v = cert.failures[0]
            return {"structure": name, "axiom": v.name, **(v.witness or {})}
    return None


def _corollary_3f(s, lim):
    from .mackey import check_corollary_3f

    return _first_failure(check_corollary_3f(s, lim).checks)


CONJECTURES: dict[str, Conjecture] = {
    c.name: c
    for c in (
        Conjecture("theorem-1", "(A) and 3-MSP imply P1, P2 and P3", _a3, _projective),
        Conjecture("theorem-2", "(A) and 3-MSP imply L(Sigma) is a projective lattice", _a3, _modular),
        Conjecture("theorem-4", "f-MSP gives lambda = bar; 3-MSP gives it on triples", _a, _theorem4),
        Conjecture("A-implies-2-MSP", "(A) alone implies 2-MSP", _a, _two_msp, expect_witness=True),
        Conjecture("centclas", "(A), (B), (C) imply classical = central", _abc, _centclas),
        Conjecture("kappa", "the Cartan map is an order embedding onto F(Sigma)", _a, _kappa),
        Conjecture("sectors", "(A) and 3-MSP give a sector partition into clopen SP blocks", _a3, _sectors),
        Conjecture("bicommutant", "T-bar = T-bar0 = T'' under (A), (B), (C)", _abc, _bicommutant),
        Conjecture("orthocomplement", "(A), (B), (C) give an atomistic orthocomplementation of L", _abc, _orthocompl),
        Conjecture("certificates", "(A), (B), (C), 3-MSP give the Mackey, regular and ortho certificates",
                   lambda s, lim: _abc(s, lim) and _msp(3)(s, lim), _certificates),
        Conjecture("corollary-3f", "(A), (B), (C) give S v P = lambda(S u P) in F(Sigma)", _abc, _corollary_3f),
    )
}


def default_corpus(limits: Limits = DEFAULT, max_states: int = 4, max_props: int = 8,
                   fixtures: bool = True) -> Iterator[StatePropertySystem]:
    from .generators import FIXTURES, enumerate_instances, measured_corpus

    yield from enumerate_instances(max_states, max_props, limits)
    yield from measured_corpus(max_states, max_props, limits)
    if fixtures:
        for name in sorted(FIXTURES):
            yield FIXTURES[name]()


def search_counterexample(
    conjecture: str | Conjecture,
    instances: Iterable[StatePropertySystem] | None = None,
    limits: Limits = DEFAULT,
) -> SearchResult:
    """First instance where the hypotheses hold and the conclusion fails."""
    from .config import BudgetExceeded

    conj = CONJECTURES[conjecture] if isinstance(conjecture, str) else conjecture
    if instances is None:
        instances = default_corpus(limits)
    result = SearchResult(conj.name, 0, 0)
    for system in instances:
        result.checked += 1
        try:
            if not conj.hypothesis(system, limits):
                continue
            result.qualifying += 1
            witness = conj.conclusion(system, limits)
        except BudgetExceeded as err:
            result.skipped.append(f"{system.name}: {err}")
            continue
        if witness is not None:
            result.instance = system
            result.witness = witness
            return result
    return result
