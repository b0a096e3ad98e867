"""Command-line front end: ``entangle-kit <subcommand> [flags]``.

Exit codes: 0 success, 2 argument error, 3 numerical-validation failure.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__
from .bipartite import (
    concurrence_mixed,
    entanglement_entropy,
    negativity_suite,
    pairwise_concurrences,
    single_site_tangles,
)
from .dynamics import bell_on_vacuum, ed_evolution, magnon_amplitudes, vacuum
from .errors import CapacityError, DiagnosticError, UnsupportedModelError, ValidationError
from .fermionic import (
    fermionic_concurrence,
    fermionic_concurrence_dual,
    pfaffian,
    pfaffian_minor_rank,
    slater_normal_form,
)
from .io import load_omega, load_state, to_jsonable, write_csv
from .itinerant import entanglement_distance, extended_hubbard_scan, fermi_gas_two_spin_rdm
from .multipartite import (
    bipartitions,
    convex_roof_estimate,
    filters_F4,
    geometric_measure,
    ghz_w_scan,
    n_tangle,
    three_tangle,
)
from .spin_models import (
    MODELS,
    ModelParams,
    ProfileRow,
    concurrence_profile,
    derivative_minimum,
    scaling_fit,
)

EXIT_OK, EXIT_ARGS, EXIT_NUMERIC = 0, 2, 3


class ArgumentError(ValueError):
    pass


def parse_range(text):
    """``start:stop:step`` (stop included when on the grid) or a single number."""
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ArgumentError(f"bad range {text!r}") from exc
    if len(vals) == 1:
        return np.array(vals)
    if len(vals) != 3 or vals[2] <= 0 or vals[1] < vals[0]:
        raise ArgumentError(f"range must be start:stop:step with step > 0, got {text!r}")
    start, stop, step = vals
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def parse_list(text):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise ArgumentError(f"bad integer list {text!r}") from exc


def thread_count(args):
    if args.threads:
        return args.threads
    env = os.environ.get("ENTANGLE_KIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ArgumentError("ENTANGLE_KIT_THREADS must be an integer") from exc
    return os.cpu_count() or 1


@contextmanager
def mapper(args):
    n = thread_count(args)
    if n <= 1:
        yield map
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            yield pool.map


def out_dir(args):
    path = Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def emit(args, name, header, rows, record=None):
    """Write ``name``.csv or ``name``.json into --out and print a one-line summary."""
    base = out_dir(args)
    if args.format == "json":
        payload = {"version": __version__, "columns": header, "rows": rows}
        if record is not None:
            payload["summary"] = record
        path = base / f"{name}.json"
        path.write_text(json.dumps(to_jsonable(payload), indent=1))
    else:
        path = write_csv(base / f"{name}.csv", header, rows)
        if record is not None:
            (base / f"{name}_summary.json").write_text(json.dumps(to_jsonable(record), indent=1))
    print(f"wrote {path} ({len(rows)} rows)")
    return path


def model_params(args):
    gamma, delta = MODELS[args.model]
    gamma = args.gamma if gamma is None else gamma
    delta = args.delta if delta is None else delta
    return gamma, delta


def lambda_grid(args):
    if args.h is not None:
        hs = parse_range(args.h)
        if np.any(hs <= 0):
            raise ArgumentError("fields must be positive")
        return np.sort(args.J / (2 * hs))
    return parse_range(args.lam)


# ---------------------------------------------------------------- subcommands


def cmd_measure(args):
    state = load_state(args.state)
    out = {"n": int(np.log2(state.shape[0]))}
    n = out["n"]
    if state.ndim == 2:
        if n == 2:
            r = concurrence_mixed(state)
            out.update(concurrence=r.C, EoF=r.EoF)
        neg = negativity_suite(state, [0])
        out.update(ppt=neg.ppt, negativity=neg.N, log_negativity=neg.EN)
    else:
        out["entropy"] = {",".join(map(str, part)): entanglement_entropy(state, part)
                          for part in bipartitions(n)}
        out["tau1"] = single_site_tangles(state)
        out["concurrence"] = pairwise_concurrences(state)
        if n == 3:
            out["tau3"] = three_tangle(state)
        if n == 4:
            f = filters_F4(state)
            out["F"] = [abs(f.F1), abs(f.F2), abs(f.F3)]
        if n % 2 == 0:
            out["tau_n"] = n_tangle(state)
        if args.all:
            out["E_g"] = geometric_measure(state, seed=args.seed)
    base = out_dir(args)
    path = base / "measure.json"
    path.write_text(json.dumps(to_jsonable(out), indent=1))
    print(json.dumps(to_jsonable(out)))
    return EXIT_OK


def cmd_groundstate(args):
    gamma, delta = model_params(args)
    grid = lambda_grid(args)
    engine = args.engine or ("free_fermion" if delta == 0 and args.N > 14 else "ed")
    with mapper(args) as m:
        rows = concurrence_profile(gamma, grid, args.N, engine=engine, delta=delta, J=args.J,
                                   boundary=args.boundary, mapper=m)
    emit(args, "groundstate", list(ProfileRow.FIELDS), [r.as_tuple() for r in rows])
    return EXIT_OK


def cmd_scaling(args):
    gamma, delta = model_params(args)
    if delta != 0:
        raise UnsupportedModelError("scaling uses the free-fermion engine (delta = 0)")
    sizes = parse_list(args.sizes)
    with mapper(args) as m:
        data = list(m(lambda n: derivative_minimum(n, gamma), sizes))
    fit = scaling_fit(sizes, [d.lam_m for d in data], [d.depth for d in data],
                      [d.width for d in data])
    record = {"theta": fit.theta, "slope": fit.prefactor, "nu": fit.nu,
              "theta_residual": fit.theta_residual, "slope_residual": fit.slope_residual,
              "nu_residual": fit.nu_residual, "reference_slope": -8 / (3 * np.pi ** 2)}
    emit(args, "fig1_derivative", ["N", "lambda_m", "depth", "width"],
         [(d.N, d.lam_m, d.depth, d.width) for d in data], record)
    print(json.dumps(to_jsonable(record)))
    return EXIT_OK


def cmd_dynamics(args):
    times = parse_range(args.t)
    if args.kind == "magnon":
        xs = range(1, args.N // 2)
        rows = []
        for t in times:
            w = magnon_amplitudes(args.N, -1, 1, args.sign, t, args.mode, args.J).w
            rows += [(t, x, 2 * abs(w[-x % args.N] * w[x % args.N])) for x in xs]
        emit(args, "fig_treconc", ["t", "x", "C"], rows)
        return EXIT_OK
    gamma, delta = model_params(args)
    p = ModelParams.from_lambda(args.N, parse_range(args.lam)[0], gamma, delta, args.J)
    psi0 = vacuum(args.N) if args.initial == "vacuum" else bell_on_vacuum(args.N, 0, 1, args.sign)
    s = ed_evolution(psi0, p, times)
    rows = []
    for a, t in enumerate(times):
        for r in range(1, args.N // 2 + 1):
            rows.append((t, r, s.C(r)[a], s.tau1[a, 0], s.residual[a, 0]))
    emit(args, "dynamics", ["t", "r", "C", "tau1", "residual"], rows,
         {"norm_drift": s.norm_drift})
    return EXIT_OK


def cmd_roof(args):
    if args.ghzw:
        grid = parse_range(args.ghzw)
        rows = ghz_w_scan(grid, restarts=args.restarts, iterations=args.iterations, seed=args.seed)
        emit(args, "fig_ghzw", ["p", "tau1", "C_roof", "tau3_roof"],
             [(r.p, r.tau1, r.C_roof, r.tau3_roof) for r in rows])
        return EXIT_OK
    if not args.state:
        raise ArgumentError("roof needs --state or --ghzw")
    rho = load_state(args.state)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    est = convex_roof_estimate(rho, args.measure, mode=args.mode, restarts=args.restarts,
                               iterations=args.iterations, seed=args.seed)
    record = {"value": est.value, "mode": est.mode, "restarts": est.restarts,
              "probabilities": est.probabilities}
    if args.measure == "concurrence" and rho.shape == (4, 4):
        record["wootters"] = concurrence_mixed(rho).C
    emit(args, "roof", ["restart", "value"], list(enumerate(est.history)), record)
    print(json.dumps(to_jsonable(record)))
    return EXIT_OK


def cmd_fermigas(args):
    rs = parse_range(args.r)
    rows = []
    for x in rs:
        pair = fermi_gas_two_spin_rdm(x * np.pi, 1.0, args.d)
        rows.append((x, pair.f ** 2, int(pair.entangled)))
    record = {"d": args.d, "d0_kf_over_pi": entanglement_distance(args.d)}
    emit(args, f"fermigas_d{args.d}", ["r_kf_over_pi", "f2", "entangled"], rows, record)
    print(json.dumps(record))
    return EXIT_OK


def cmd_hubbard(args):
    us, vs = parse_range(args.U), parse_range(args.V)
    surface = extended_hubbard_scan(us, vs, L=args.L)
    rows = [(u, v, surface[a, b]) for a, u in enumerate(us) for b, v in enumerate(vs)]
    emit(args, "hubbard_entropy", ["U", "V", "S"], rows)
    return EXIT_OK


def cmd_fermion(args):
    omega = load_omega(args.omega)
    pf = pfaffian(omega) if omega.shape[0] % 2 == 0 else 0j
    nf = slater_normal_form(omega)
    out = {"pfaffian": pf, "slater_rank": nf.rank, "z": nf.z,
           "minor_rank": pfaffian_minor_rank(omega)}
    if omega.shape == (4, 4):
        out["concurrence"] = fermionic_concurrence(omega)
        out["concurrence_dual"] = fermionic_concurrence_dual(omega)
    path = out_dir(args) / "fermion.json"
    path.write_text(json.dumps(to_jsonable(out), indent=1))
    print(json.dumps(to_jsonable(out)))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--out", default=".")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", choices=("xx", "xy", "ising", "xxz"), default="ising")
    model.add_argument("--gamma", type=float, default=0.5)
    model.add_argument("--delta", type=float, default=0.0)
    model.add_argument("--J", type=float, default=1.0)
    model.add_argument("--N", type=int, default=10)

    parser = argparse.ArgumentParser(prog="entangle-kit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="measures of a state file")
    p.add_argument("--state", required=True)
    p.add_argument("--all", action="store_true", help="include the geometric measure")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("groundstate", parents=[common, model], help="concurrence profile")
    field = p.add_mutually_exclusive_group(required=True)
    field.add_argument("--lambda", dest="lam")
    field.add_argument("--h")
    p.add_argument("--engine", choices=("ed", "free_fermion"))
    p.add_argument("--boundary", choices=("periodic", "open"), default="periodic")
    p.set_defaults(func=cmd_groundstate)

    p = sub.add_parser("scaling", parents=[common, model], help="finite-size scaling at lambda = 1")
    p.add_argument("--sizes", default="50,100,150,200,300,400")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("dynamics", parents=[common, model], help="entanglement propagation")
    p.add_argument("--kind", choices=("magnon", "ed"), default="magnon")
    p.add_argument("--mode", choices=("finite", "bessel"), default="finite")
    p.add_argument("--t", default="0:4:0.05")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--initial", choices=("vacuum", "bell"), default="vacuum")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("roof", parents=[common], help="convex-roof estimates")
    p.add_argument("--state")
    p.add_argument("--ghzw", help="p range for the GHZ/W mixture scan")
    p.add_argument("--measure", choices=("concurrence", "tau3"), default="concurrence")
    p.add_argument("--mode", choices=("minimize", "maximize"), default="minimize")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--iterations", type=int, default=300)
    p.set_defaults(func=cmd_roof)

    p = sub.add_parser("fermigas", parents=[common], help="two-spin state of the Fermi gas")
    p.add_argument("--d", type=int, choices=(2, 3), default=3)
    p.add_argument("--r", default="0:1:0.01", help="r kf / pi range")
    p.set_defaults(func=cmd_fermigas)

    p = sub.add_parser("hubbard", parents=[common], help="local entropy of the extended Hubbard chain")
    p.add_argument("--L", type=int, choices=(2, 4, 6), default=6)
    p.add_argument("--U", default="-8:8:1")
    p.add_argument("--V", default="0")
    p.set_defaults(func=cmd_hubbard)

    p = sub.add_parser("fermion", parents=[common], help="Pfaffian and Slater tools")
    p.add_argument("--omega", required=True)
    p.set_defaults(func=cmd_fermion)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValidationError, DiagnosticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ArgumentError, CapacityError, UnsupportedModelError, ValueError,
            KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
