"""Seeded end-to-end property battery over the whole package.

:func:`run_suite` draws everything from one seed, counts checks and
failures per section, and returns a JSON-ready report.  The report contains
no timing and no environment data, so two runs with the same arguments
produce identical bytes — callers that want wall-clock numbers print them
elsewhere.
"""

from __future__ import annotations

import random

from .generators import (
    derive_seed,
    random_pair_with_relation,
    random_psd,
    random_semilinear,
)
from .lebesgue import decompose, verify_decomposition
from .linalg import (
    DEFAULT_TOL,
    EXACT,
    FLAVOR_CONJUGATE,
    FLAVOR_LINEAR,
    GaussianRational,
    Matrix,
    PsdOperator,
    subspace_intersect,
)
from .preserver import (
    PreserverSpec,
    WeightFamily,
    make_wild_map,
    verify_range_form,
    verify_relation_preservation,
)
from .projective import (
    induced_line_map,
    projective_scalar,
    reconstruct_semilinear,
    swap_counterexample_line_map,
    verify_projectivity,
)
from .relations import analyze_pair, leq

_DOMINATION_EXPONENT = 60


def _relation_kinds(dim: int) -> tuple[str, ...]:
    return ("ac", "singular", "incomparable") if dim >= 3 else ("ac", "singular")


def _flavor(k: int) -> str:
    return FLAVOR_LINEAR if k % 2 == 0 else FLAVOR_CONJUGATE


class _Section:
    def __init__(self):
        self.checks = 0
        self.failures = 0
        self.notes: list[str] = []

    def record(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if len(self.notes) < 8:
                self.notes.append(label)

    def to_dict(self) -> dict:
        out = {"checks": self.checks, "failures": self.failures}
        if self.notes:
            out["first_failures"] = list(self.notes)
        return out


def _relations_section(dims, trials, seed, sec: _Section) -> None:
    scale = 2**_DOMINATION_EXPONENT
    for dim in dims:
        kinds = _relation_kinds(dim)
        for k in range(trials):
            kind = kinds[k % len(kinds)]
            a, b = random_pair_with_relation(dim, kind, derive_seed(seed, 1, dim, k))
            rep = analyze_pair(a, b)
            tag = f"dim={dim} k={k} kind={kind}"
            wanted = {
                "ac": rep.abs_cont_ab,
                "singular": rep.singular,
                "incomparable": not rep.abs_cont_ab
                and not rep.abs_cont_ba
                and not rep.singular,
            }[kind]
            sec.record(wanted, f"{tag}: requested relation not certified")
            sec.record(
                rep.abs_cont_ab == leq(a, b.scaled(scale)),
                f"{tag}: domination oracle disagrees with range inclusion",
            )
            sec.record(
                rep.dim_range_sum == rep.rank_a + rep.rank_b - rep.dim_range_intersection,
                f"{tag}: rank lattice identity broken",
            )
            sec.record(
                rep.singular == (rep.dim_range_intersection == 0),
                f"{tag}: singularity flag out of step with intersection",
            )


def _witness_section(dims, trials, seed, sec: _Section) -> None:
    scale = 2**_DOMINATION_EXPONENT
    for dim in dims:
        kinds = _relation_kinds(dim)
        for k in range(max(1, trials // 4)):
            kind = kinds[k % len(kinds)]
            a, b = random_pair_with_relation(dim, kind, derive_seed(seed, 2, dim, k))
            inter = subspace_intersect(a.range(), b.range())
            tag = f"dim={dim} k={k} kind={kind}"
            if inter.dim == 0:
                sec.record(
                    analyze_pair(a, b).singular,
                    f"{tag}: empty intersection but pair not flagged singular",
                )
                continue
            f = inter.basis.column(0)
            # scale the largest entry to unit size: the constant needed to
            # sit below both operators then stays far inside the 2^60 budget
            pivot = max((f.entry(i, 0) for i in range(f.rows)), key=lambda z: z.norm_sq())
            f = f.scale(GaussianRational.coerce(1) / pivot)
            c = PsdOperator.certified(f @ f.H, 1)
            sec.record(
                leq(c, a.scaled(scale)) and leq(c, b.scaled(scale)),
                f"{tag}: intersection vector fails to witness the common part",
            )


def _maps_section(dims, trials, seed, skip_float, tol, out: dict) -> int:
    failures = 0
    map_trials = max(10, trials // 2)
    for name in ("congruence", "form_iv", "wild"):
        if name == "form_iv" and skip_float:
            out[name] = {"skipped": True}
            continue
        per_dim = {}
        for k, dim in enumerate(dims):
            if name == "congruence":
                t = random_semilinear(dim, derive_seed(seed, 3, dim), flavor=_flavor(k))
                spec = PreserverSpec.congruence(t)
            elif name == "form_iv":
                t = random_semilinear(dim, derive_seed(seed, 4, dim), flavor=_flavor(k + 1))
                spec = PreserverSpec.form_iv(t, WeightFamily.seeded(derive_seed(seed, 5, dim)))
            else:
                spec = make_wild_map(derive_seed(seed, 6, dim), dim)
            rep = verify_relation_preservation(
                spec, trials=map_trials, seed=derive_seed(seed, 7, dim), tol=tol
            )
            per_dim[str(dim)] = {
                "trials": rep.trials,
                "violations": len(rep.violations),
                "image_backend": rep.image_backend,
            }
            failures += len(rep.violations)
        out[name] = per_dim
    return failures


def _range_form_section(dims, trials, seed, skip_float, tol, sec: _Section) -> None:
    samples = max(8, trials // 8)
    for dim in dims:
        t = random_semilinear(dim, derive_seed(seed, 8, dim))
        rep = verify_range_form(
            PreserverSpec.congruence(t), t, trials=samples, seed=derive_seed(seed, 9, dim), tol=tol
        )
        sec.record(rep.passed, f"dim={dim}: congruence range covariance broken")
        if not skip_float:
            spec = PreserverSpec.form_iv(t, WeightFamily.seeded(derive_seed(seed, 10, dim)))
            rep_f = verify_range_form(
                spec, t, trials=samples, seed=derive_seed(seed, 11, dim), tol=tol
            )
            sec.record(rep_f.passed, f"dim={dim}: weighted-map range covariance broken")


def _projective_section(dims, trials, seed, skip_float, sec: _Section) -> None:
    proj_trials = min(trials, 40)
    for dim in dims:
        if dim < 3:
            continue
        for k, flavor in enumerate((FLAVOR_LINEAR, FLAVOR_CONJUGATE)):
            t = random_semilinear(dim, derive_seed(seed, 12, dim, k), flavor=flavor)
            lm = induced_line_map(PreserverSpec.congruence(t))
            rec = reconstruct_semilinear(lm)
            tag = f"dim={dim} flavor={flavor}"
            sec.record(rec.flavor == flavor, f"{tag}: flavor lost in reconstruction")
            sec.record(
                projective_scalar(rec.t, t.t) is not None,
                f"{tag}: reconstructed operator is not a scalar multiple",
            )
            rep = verify_projectivity(lm, trials=proj_trials, seed=derive_seed(seed, 13, dim, k))
            sec.record(rep.passed, f"{tag}: induced map failed coplanarity")
        if not skip_float:
            t = random_semilinear(dim, derive_seed(seed, 14, dim))
            spec = PreserverSpec.form_iv(t, WeightFamily.seeded(derive_seed(seed, 15, dim)))
            rec = reconstruct_semilinear(induced_line_map(spec))
            sec.record(
                projective_scalar(rec.t, t.t) is not None,
                f"dim={dim}: weighted-map reconstruction drifted off the witness",
            )
        detected = not verify_projectivity(
            swap_counterexample_line_map(dim), trials=0, seed=0
        ).passed
        sec.record(detected, f"dim={dim}: swap counterexample slipped through")


def _lebesgue_section(dims, trials, seed, tol, sec: _Section) -> None:
    check_trials = min(60, max(10, trials // 4))
    for dim in dims:
        for k in range(max(2, trials // 20)):
            kind = _relation_kinds(dim)[k % len(_relation_kinds(dim))]
            a, b = random_pair_with_relation(dim, kind, derive_seed(seed, 16, dim, k))
            af, bf = a.to_float(), b.to_float()
            dec = decompose(af, bf, tol)
            chk = verify_decomposition(
                dec, af, trials=check_trials, seed=derive_seed(seed, 17, dim, k) % 2**32, tol=tol
            )
            tag = f"dim={dim} k={k} kind={kind}"
            sec.record(chk.passed, f"{tag}: decomposition check failed")
            if dec.ac_part.rank:
                sec.record(
                    analyze_pair(dec.ac_part, bf, tol).abs_cont_ab,
                    f"{tag}: dominated part not dominated",
                )
            if dec.singular_part.rank:
                sec.record(
                    analyze_pair(dec.singular_part, bf, tol).singular,
                    f"{tag}: singular part not singular",
                )
        inv = random_psd(dim, dim, derive_seed(seed, 18, dim)).to_float()
        any_a = random_psd(
            dim, random.Random(derive_seed(seed, 19, dim)).randint(0, dim), derive_seed(seed, 20, dim)
        ).to_float()
        dec = decompose(any_a, inv, tol)
        sec.record(
            dec.singular_part.rank == 0
            and dec.ac_part.matrix.allclose(any_a.matrix, tol),
            f"dim={dim}: invertible base must absorb everything",
        )


def _agreement_section(dims, trials, seed, tol, sec: _Section) -> None:
    for dim in dims:
        kinds = _relation_kinds(dim)
        for k in range(max(4, trials // 4)):
            kind = kinds[k % len(kinds)]
            a, b = random_pair_with_relation(dim, kind, derive_seed(seed, 21, dim, k))
            exact_rep = analyze_pair(a, b)
            float_rep = analyze_pair(a.to_float(), b.to_float(), tol)
            same = (
                exact_rep.abs_cont_ab == float_rep.abs_cont_ab
                and exact_rep.abs_cont_ba == float_rep.abs_cont_ba
                and exact_rep.singular == float_rep.singular
                and exact_rep.leq_ab == float_rep.leq_ab
                and exact_rep.dim_range_intersection == float_rep.dim_range_intersection
            )
            sec.record(same, f"dim={dim} k={k} kind={kind}: backends disagree")


def _pinv_section(dims, trials, seed, skip_float, sec: _Section) -> None:
    for dim in dims:
        for k in range(max(3, trials // 20)):
            rand = random.Random(derive_seed(seed, 22, dim, k))
            rows = dim
            cols = rand.randint(1, dim + 1)
            m = Matrix.exact(
                [
                    [(rand.randint(-3, 3), rand.randint(-3, 3)) for _ in range(cols)]
                    for _ in range(rows)
                ]
            )
            p = m.pinv()
            tag = f"dim={dim} k={k}"
            ok = (
                m @ p @ m == m
                and p @ m @ p == p
                and (m @ p).H == m @ p
                and (p @ m).H == p @ m
                and p.rank() == m.rank()
            )
            sec.record(ok, f"{tag}: exact pseudoinverse identities broken")
            if not skip_float:
                mf = m.to_float()
                pf = mf.pinv()
                okf = (
                    (mf @ pf @ mf).allclose(mf, 1e-9)
                    and (pf @ mf @ pf).allclose(pf, 1e-9)
                    and pf.rank() == m.rank()
                )
                sec.record(okf, f"{tag}: float pseudoinverse identities broken")


def run_suite(
    dims,
    trials: int = 100,
    seed: int = 0,
    skip_float: bool = False,
    tol: float = DEFAULT_TOL,
) -> dict:
    """Run every section and return the deterministic report dictionary."""
    dims = sorted(set(int(d) for d in dims))
    if not dims or dims[0] < 1:
        raise ValueError("dims must be positive integers")
    if trials < 1:
        raise ValueError("trials must be positive")

    sections: dict[str, dict] = {}
    failures = 0

    relations = _Section()
    _relations_section(dims, trials, seed, relations)
    sections["relations"] = relations.to_dict()
    failures += relations.failures

    witnesses = _Section()
    _witness_section(dims, trials, seed, witnesses)
    sections["witnesses"] = witnesses.to_dict()
    failures += witnesses.failures

    maps_out: dict = {}
    failures += _maps_section(dims, trials, seed, skip_float, tol, maps_out)
    sections["maps"] = maps_out

    range_form = _Section()
    _range_form_section(dims, trials, seed, skip_float, tol, range_form)
    sections["range_form"] = range_form.to_dict()
    failures += range_form.failures

    projective = _Section()
    _projective_section(dims, trials, seed, skip_float, projective)
    sections["projective"] = projective.to_dict()
    failures += projective.failures

    if skip_float:
        sections["lebesgue"] = {"skipped": True}
        sections["backend_agreement"] = {"skipped": True}
    else:
        lebesgue = _Section()
        _lebesgue_section(dims, trials, seed, tol, lebesgue)
        sections["lebesgue"] = lebesgue.to_dict()
        failures += lebesgue.failures
        agreement = _Section()
        _agreement_section(dims, trials, seed, tol, agreement)
        sections["backend_agreement"] = agreement.to_dict()
        failures += agreement.failures

    pinv = _Section()
    _pinv_section(dims, trials, seed, skip_float, pinv)
    sections["pinv"] = pinv.to_dict()
    failures += pinv.failures

    return {
        "dims": dims,
        "trials": trials,
        "seed": seed,
        "skip_float": skip_float,
        "tol": tol,
        "sections": sections,
        "failures": failures,
        "passed": failures == 0,
    }
