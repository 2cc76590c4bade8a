"""Decision procedure for #EO over EO signatures with ARS: affine, product type, or hard."""
from __future__ import annotations

from dataclasses import dataclass, field

from .recognizers import AffineRep, ProductRep, recognize_affine, recognize_product, space_of
from .signature import PreconditionError, Signature

AFFINE = "TractableAffine"
PRODUCT = "TractableProduct"
HARD = "Hard"


@dataclass
class Verdict:
    outcome: str
    witnesses: dict[str, AffineRep | ProductRep] = field(default_factory=dict)
    diagnostic: dict | None = None
    both_classes: bool = False

    @property
    def tractable(self) -> bool:
        return self.outcome != HARD


def affine_failure(f: Signature) -> str:
    space = space_of(f)
    if space is None:
        return "support not affine"
    mods = {f.values[x].abs2() for x in f.support}
    if len(mods) > 1:
        return "norm mismatch"
    return "phases do not fit a Z4 quadratic with even cross terms"


def product_failure(f: Signature) -> str:
    space = space_of(f)
    if space is None:
        return "support not affine"
    if any(lam & (lam - 1) for _, lam in space.forms()):
        return "support not cut out by pins, equalities and disequalities"
    return "product quotient not rank-1"


def _named(F) -> dict[str, Signature]:
    if isinstance(F, dict):
        return dict(F)
    return {f"f{k}": f for k, f in enumerate(F)}


def _check_inputs(F: dict[str, Signature]) -> None:
    if not F:
        raise PreconditionError("classify needs at least one signature")
    for name, f in F.items():
        if not f.is_eo:
            raise PreconditionError(f"signature {name!r} is not EO")
        if not f.is_ars:
            raise PreconditionError(f"signature {name!r} does not satisfy ARS")


def classify(F) -> Verdict:
    """Tractable iff every signature is affine, or every signature is product type."""
    F = _named(F)
    _check_inputs(F)
    aff = {n: recognize_affine(f) for n, f in F.items()}
    prod = {n: recognize_product(f) for n, f in F.items()}
    for n, f in F.items():
        for rep in (aff[n], prod[n]):
            if rep is not None and rep.reconstruct() != f:
                raise AssertionError(f"witness for {n!r} does not reproduce it")
    all_aff = all(r is not None for r in aff.values())
    all_prod = all(r is not None for r in prod.values())
    if all_aff:
        return Verdict(AFFINE, dict(aff), both_classes=all_prod)
    if all_prod:
        return Verdict(PRODUCT, dict(prod))
    for n, f in F.items():
        if aff[n] is None and prod[n] is None:
            return Verdict(
                HARD,
                diagnostic={
                    "signature": n,
                    "affine": affine_failure(F[n]),
                    "product": product_failure(F[n]),
                    "reason": _merge_reasons(affine_failure(F[n]), product_failure(F[n])),
                },
            )
    # every signature is in one class, but the set is in neither
    not_aff = next(n for n in F if aff[n] is None)
    not_prod = next(n for n in F if prod[n] is None)
    return Verdict(
        HARD,
        diagnostic={
            "signatures": [not_aff, not_prod],
            "affine": f"{not_aff}: {affine_failure(F[not_aff])}",
            "product": f"{not_prod}: {product_failure(F[not_prod])}",
            "reason": "mixed set: no single tractable class contains every signature",
        },
    )


def _merge_reasons(a: str, p: str) -> str:
    return a if a == p else f"{a}; {p}"


def classify_single_arity4(f: Signature) -> Verdict:
    """Single arity-4 EO+ARS signature: tractable exactly when it is product type."""
    if f.arity != 4:
        raise PreconditionError(f"classify_single_arity4 needs arity 4, got {f.arity}")
    _check_inputs({"f": f})
    prod = recognize_product(f)
    aff = recognize_affine(f)
    if prod is not None:
        return Verdict(PRODUCT, {"f": prod}, both_classes=aff is not None)
    if aff is not None:
        # the affine class should sit inside the product class at arity 4; defer to the general rule
        return classify({"f": f})
    return Verdict(
        HARD,
        diagnostic={
            "signature": "f",
            "affine": affine_failure(f),
            "product": product_failure(f),
            "reason": _merge_reasons(affine_failure(f), product_failure(f)),
        },
    )
