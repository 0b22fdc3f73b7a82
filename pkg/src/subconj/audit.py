"""The full verification audit as an ordered list of named suites."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Iterator

from . import blockcode, codec, group, subshift
from .alphabet import parse_word
from .codec import RHO, RhoTable
from .report import Report, timed
from .subshift import ForbiddenSet

DEFAULT_SEED = 42


@dataclass(frozen=True)
class AuditConfig:
    """Bounds for every check; the defaults are the acceptance bounds."""

    involution_len: int = 6
    star_len: int = 4
    commutation_len: int = 5
    noncommutation_len: int = 3
    axioms_norm: int = 4
    freeness_norm: int = 6
    moved_count: int = 50
    equivariance_len: int = 6
    intertwining_len: int = 5
    roundtrip_len: int = 5
    h_samples: int = 100
    correspondence_len: int = 3
    seed: int = DEFAULT_SEED
    forbidden: tuple[ForbiddenSet, ...] | None = None
    rho: RhoTable = RHO

    def capped(self, max_len: int | None = None, max_norm: int | None = None) -> "AuditConfig":
        """Lower every word-length bound to ``max_len`` and group bound to ``max_norm``."""
        out = self
        if max_len is not None:
            out = replace(
                out,
                involution_len=min(out.involution_len, max_len),
                star_len=min(out.star_len, max(max_len, 1)),
                commutation_len=min(out.commutation_len, max_len),
                noncommutation_len=max(min(out.noncommutation_len, max_len), 2),
                equivariance_len=min(out.equivariance_len, max(max_len, 1)),
                intertwining_len=min(out.intertwining_len, max(max_len, 2)),
                roundtrip_len=min(out.roundtrip_len, max_len),
                correspondence_len=min(out.correspondence_len, max(max_len, 1)),
            )
        if max_norm is not None:
            out = replace(
                out,
                axioms_norm=min(out.axioms_norm, max_norm),
                freeness_norm=min(out.freeness_norm, max_norm),
            )
        return out

    def forbidden_sets(self) -> tuple[ForbiddenSet, ...]:
        if self.forbidden is not None:
            return self.forbidden
        return default_forbidden_sets(self.seed)


def default_forbidden_sets(seed: int = DEFAULT_SEED) -> tuple[ForbiddenSet, ...]:
    return (
        ForbiddenSet(),
        ForbiddenSet.of(parse_word("a1")),
        ForbiddenSet.of(parse_word("a2 a1 a2")),
        subshift.random_forbidden_set(3, seed),
    )


def _readability(cfg: AuditConfig) -> Iterator[Report]:
    yield codec.check_unique_readability(cfg.rho)


def _involution(cfg: AuditConfig) -> Iterator[Report]:
    for i in range(1, 7):
        yield blockcode.verify_involution(i, cfg.involution_len)
    for i in range(1, 7):
        yield blockcode.verify_length_preservation(i, min(cfg.involution_len, 4))


def _commutation(cfg: AuditConfig) -> Iterator[Report]:
    yield blockcode.verify_cross_commutation(cfg.commutation_len)


def _noncommutation(cfg: AuditConfig) -> Iterator[Report]:
    yield blockcode.verify_noncommutation(cfg.noncommutation_len)


def _star(cfg: AuditConfig) -> Iterator[Report]:
    for i in range(1, 7):
        yield blockcode.verify_star_consistency(i, cfg.star_len)


def _group(cfg: AuditConfig) -> Iterator[Report]:
    yield group.verify_group_axioms(cfg.axioms_norm)


def _freeness(cfg: AuditConfig) -> Iterator[Report]:
    yield group.verify_freeness(cfg.freeness_norm)
    yield group.verify_moved_words(cfg.moved_count)


def _equivariance(cfg: AuditConfig) -> Iterator[Report]:
    for R in cfg.forbidden_sets():
        for i in range(1, 7):
            yield subshift.verify_equivariance(i, R, cfg.equivariance_len)


def _suffix(cfg: AuditConfig) -> Iterator[Report]:
    yield codec.verify_suffix_agreement(cfg.rho)
    yield codec.verify_prefix_discrimination(cfg.rho)


def _intertwining(cfg: AuditConfig) -> Iterator[Report]:
    for i in range(1, 7):
        yield codec.verify_intertwining(i, cfg.intertwining_len, cfg.rho)


def _h_inverse(cfg: AuditConfig) -> Iterator[Report]:
    for i in range(1, 7):
        yield codec.verify_h_inverse(i, cfg.h_samples, cfg.seed, cfg.rho)


def _roundtrip(cfg: AuditConfig) -> Iterator[Report]:
    yield codec.verify_round_trip(cfg.roundtrip_len, cfg.rho)


def _correspondence(cfg: AuditConfig) -> Iterator[Report]:
    for R in cfg.forbidden_sets():
        yield codec.verify_forbidden_correspondence(R, cfg.correspondence_len, cfg.rho)


def _sync(cfg: AuditConfig) -> Iterator[Report]:
    yield codec.verify_sync(cfg.rho)


SUITES: dict[str, Callable[[AuditConfig], Iterable[Report]]] = {
    "eq3": _readability,
    "involution": _involution,
    "commutation": _commutation,
    "noncommutation": _noncommutation,
    "star": _star,
    "group": _group,
    "freeness": _freeness,
    "equivariance": _equivariance,
    "suffix": _suffix,
    "intertwining": _intertwining,
    "h-inverse": _h_inverse,
    "roundtrip": _roundtrip,
    "correspondence": _correspondence,
    "sync": _sync,
}


def run_audit(cfg: AuditConfig = AuditConfig(), suites: Iterable[str] | None = None) -> Iterator[Report]:
    names = list(SUITES) if suites is None else list(suites)
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    for name in SUITES:
        if name in names:
            yield from SUITES[name](cfg)


def mutation_sensitivity(rho: RhoTable = RHO, cfg: AuditConfig = AuditConfig(), exhaustive: bool = False) -> Report:
    """Every single-bit flip of the code table must break unique readability, the
    suffix/tilde facts, or the conjugacy layer (intertwining, h-inverse, round trip).

    Cheap checks run first; the conjugacy layer only runs for flips that survive
    them.  Unless ``exhaustive`` is set, the sweep stops at the first flip that
    survives everything, which already refutes the property.
    """
    rep = Report("mutation-sensitivity")
    survivors: list[str] = []
    with timed(rep):
        for s, entry in rho.items():
            for bit in range(len(entry)):
                mutant = rho.flipped(s, bit)
                rep.checked += 1
                if _detects(mutant, cfg):
                    continue
                survivors.append(f"{s}:{bit}")
                if not exhaustive:
                    break
            if survivors and not exhaustive:
                break
        rep.extra = {"survivors": survivors}
        if survivors:
            rep.fail(f"flip(s) {', '.join(survivors)} pass unique readability, suffix agreement and the conjugacy layer")
    return rep


def _detects(mutant: RhoTable, cfg: AuditConfig) -> bool:
    cheap = (codec.check_unique_readability, codec.verify_suffix_agreement, codec.verify_prefix_discrimination)
    if not all(check(mutant) for check in cheap):
        return True
    layer = replace(cfg, rho=mutant)
    for suite in (_h_inverse, _roundtrip, _intertwining):
        if not all(suite(layer)):
            return True
    return False
