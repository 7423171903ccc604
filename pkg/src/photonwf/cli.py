"""Command-line front end.

Subcommands: make-state, evolve, norms, wigner, sagnac-scan, two-photon.
Every run is deterministic given its configuration; randomized builders
take an explicit seed which is recorded in the output metadata.  Options
can come from a JSON config file (--config); explicit flags win.

Exit codes: 0 success, 2 validation error, 3 numerical-invariant failure,
4 I/O or container-format error.
"""

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import io as pwfio
from .errors import FormatError, InvariantError, ValidationError
from .fields import ComplexVectorField, Helicity
from .grids import Grid1, Grid3, Units
from .normalization import (
    MomentumAmplitude,
    WeightChoice,
    amplitude_from_field,
    energy_expectation_momentum,
    momentum_norm,
    synthesize_onshell,
)
from .propagator import StepperConfig, cross_check_deviation, energy, evolve_spectral
from .states import (
    gaussian_wavepacket,
    hermite_gauss,
    hermite_gauss_2d,
    random_bandlimited,
    single_mode,
    two_photon_gaussian,
)
from .wigner import (
    PhaseSpacePoint,
    TransverseState,
    TwoPhotonState,
    joint_wigner_two_photon,
    sagnac_count_rate,
    two_photon_coincidence,
    wigner_1d,
    wigner_2d,
    wigner_from_count_rate,
)


def _add_shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with option defaults; flags win")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized builders")
    p.add_argument("--hbar", type=float, default=None, help="action scale (default 1)")
    p.add_argument("--c", type=float, default=None, help="speed of light (default 1)")


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{args.config}: bad JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise ValidationError(f"{args.config}: config must be a JSON object")
    for key, val in cfg.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise ValidationError(f"unknown config key {key!r}")
        if getattr(args, dest) is None:
            setattr(args, dest, val)


def _units(args) -> Units:
    return Units(hbar=args.hbar if args.hbar is not None else 1.0,
                 c=args.c if args.c is not None else 1.0)


def _meta(args) -> dict:
    meta = {}
    if args.seed is not None:
        meta["seed"] = args.seed
    return meta


def _override_units(obj, args):
    if args.hbar is None and args.c is None:
        return obj
    units = Units(
        hbar=args.hbar if args.hbar is not None else obj.units.hbar,
        c=args.c if args.c is not None else obj.units.c,
    )
    return replace(obj, units=units)


def _load(path, kinds, what):
    obj = pwfio.read_pwf(path)
    if not isinstance(obj, kinds):
        names = ", ".join(k.__name__ for k in (kinds if isinstance(kinds, tuple) else (kinds,)))
        raise ValidationError(f"{path}: expected {what} ({names}), got {type(obj).__name__}")
    return obj


# ---------------------------------------------------------------------------
# make-state
# ---------------------------------------------------------------------------

def cmd_make_state(args) -> None:
    units = _units(args)
    kind = args.kind

    if kind in ("gaussian", "single-mode", "random"):
        if args.dims is None or args.lengths is None:
            raise ValidationError(f"builder {kind!r} needs --dims and --lengths")
        grid = Grid3(tuple(args.dims), tuple(args.lengths))
        helicity = Helicity(args.helicity if args.helicity is not None else 1)
        if kind == "gaussian":
            if args.k0 is None or args.sigma_k is None:
                raise ValidationError("gaussian builder needs --k0 and --sigma-k")
            amp = gaussian_wavepacket(
                grid, args.k0, args.sigma_k,
                polarization=args.pol if args.pol is not None else (1.0, 0.0, 0.0),
                units=units,
            )
        elif kind == "single-mode":
            if args.mode is None:
                raise ValidationError("single-mode builder needs --mode (integer indices)")
            amp = single_mode(
                grid, args.mode,
                polarization=args.pol if args.pol is not None else (1.0, 0.0, 0.0),
                units=units,
            )
        else:
            if args.kmax is None:
                raise ValidationError("random builder needs --kmax")
            if args.seed is None:
                raise ValidationError("random builder needs --seed for reproducibility")
            amp = random_bandlimited(grid, args.kmax, np.random.default_rng(args.seed), units=units)
        meta = _meta(args)
        meta["builder"] = kind
        meta["helicity"] = int(helicity)
        pwfio.write_pwf(args.out, amp, meta=meta)
        print(f"wrote momentum amplitude ({kind}) to {args.out}; momentum_norm="
              f"{momentum_norm(amp):.12g}")
        return

    if kind == "hermite-gauss":
        if args.n is None or args.length is None:
            raise ValidationError("hermite-gauss builder needs --n and --length")
        width = args.width if args.width is not None else 1.0
        if args.orders is not None:
            gx = Grid1(args.n, args.length)
            gy = Grid1(args.n2 if args.n2 is not None else args.n,
                       args.length2 if args.length2 is not None else args.length)
            state = hermite_gauss_2d(gx, gy, tuple(args.orders), width=width, units=units)
        else:
            order = args.order if args.order is not None else 0
            state = hermite_gauss(Grid1(args.n, args.length), order, width=width, units=units)
        pwfio.write_pwf(args.out, state, meta=_meta(args) | {"builder": kind})
        print(f"wrote transverse state (hermite-gauss) to {args.out}; norm={state.norm:.12g}")
        return

    if kind == "two-photon-gaussian":
        if args.n is None or args.length is None:
            raise ValidationError("two-photon-gaussian builder needs --n and --length")
        g1 = Grid1(args.n, args.length)
        g2 = Grid1(args.n2 if args.n2 is not None else args.n,
                   args.length2 if args.length2 is not None else args.length)
        state = two_photon_gaussian(
            g1, g2,
            correlation=args.corr if args.corr is not None else 0.0,
            width=args.width if args.width is not None else 1.0,
            units=units,
        )
        pwfio.write_pwf(args.out, state, meta=_meta(args) | {"builder": kind})
        print(f"wrote two-photon state to {args.out}; norm={state.norm:.12g}")
        return

    raise ValidationError(f"unknown state kind {args.kind!r}")


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------

def cmd_evolve(args) -> None:
    obj = _load(args.infile, (ComplexVectorField, MomentumAmplitude), "field or amplitude")
    obj = _override_units(obj, args)
    weight = WeightChoice(args.weight if args.weight is not None else "sqrt_energy")
    if isinstance(obj, MomentumAmplitude):
        psi0 = synthesize_onshell(obj, t=0.0, weight=weight)
    else:
        if obj.space != "coordinate":
            raise ValidationError("evolve needs a coordinate-space field")
        psi0 = obj

    t = args.t if args.t is not None else 0.0
    dt = args.dt if args.dt is not None else 1e-3
    cfg = StepperConfig(dt=dt, method=args.method if args.method is not None else "rk4")

    psi1 = evolve_spectral(psi0, t)
    pwfio.write_pwf(args.out, psi1, meta=_meta(args))
    summary = {"t": t, "time": psi1.time, "energy": energy(psi1)}
    if args.oracle:
        summary["oracle_max_relative_deviation"] = cross_check_deviation(psi0, t, cfg)
        summary["oracle_dt"] = dt
    print(json.dumps(summary))


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def cmd_norms(args) -> None:
    obj = _load(args.infile, (ComplexVectorField, MomentumAmplitude), "field or amplitude")
    obj = _override_units(obj, args)
    weight = WeightChoice(args.weight if args.weight is not None else "sqrt_energy")

    report = {"input": args.infile, "weight": weight.value,
              "hbar": obj.units.hbar, "c": obj.units.c}
    if isinstance(obj, MomentumAmplitude):
        amp = obj
        psi = synthesize_onshell(amp, t=0.0, weight=weight)
    else:
        amp = amplitude_from_field(obj, weight=weight)
        psi = obj.to_coordinate() if obj.space != "coordinate" else obj

    report["momentum_norm"] = momentum_norm(amp)
    report["coordinate_energy"] = energy(psi)
    report["energy_expectation_momentum"] = energy_expectation_momentum(amp)
    if report["momentum_norm"] == 0.0:
        report["warning"] = "zero field: all norms vanish"
    else:
        e_c, e_m = report["coordinate_energy"], report["energy_expectation_momentum"]
        report["rel_diff_energy"] = abs(e_c - e_m) / max(abs(e_m), abs(e_c))

    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


# ---------------------------------------------------------------------------
# wigner / sagnac-scan / two-photon
# ---------------------------------------------------------------------------

def cmd_wigner(args) -> None:
    state = _load(args.infile, TransverseState, "transverse state")
    if isinstance(state, TwoPhotonState):
        raise ValidationError("use the two-photon command for pair states")
    state = _override_units(state, args)
    wig = wigner_1d(state) if state.ndim == 1 else wigner_2d(state)
    meta = _meta(args) | {"input": args.infile}
    if args.out:
        pwfio.write_pwf(args.out, wig, meta=meta)
    if args.out_csv:
        pwfio.write_wigner_csv(args.out_csv, wig, meta=meta)
    if not (args.out or args.out_csv):
        raise ValidationError("give --out and/or --out-csv")
    print(f"W grid {'x'.join(str(len(a)) for a in (*wig.xs, *wig.ps))}; "
          f"integral={wig.integral():.12g}")


def cmd_sagnac_scan(args) -> None:
    state = _load(args.infile, TransverseState, "transverse state")
    if isinstance(state, TwoPhotonState):
        raise ValidationError("use the two-photon command for pair states")
    state = _override_units(state, args)

    npts = args.scan_points if args.scan_points is not None else 21
    x0r = args.x0_range if args.x0_range is not None else (-2.0, 2.0)
    p0r = args.p0_range if args.p0_range is not None else (-2.0, 2.0)
    x0s = np.linspace(x0r[0], x0r[1], npts)
    p0s = np.linspace(p0r[0], p0r[1], npts)

    hbar = state.units.hbar
    rows = []
    for x0 in x0s:
        for p0 in p0s:
            if state.ndim == 1:
                pt = PhaseSpacePoint(x0, p0)
            else:
                y0 = args.y0 if args.y0 is not None else 0.0
                p0y = args.p0y if args.p0y is not None else 0.0
                pt = PhaseSpacePoint((x0, y0), (p0, p0y))
            rate = sagnac_count_rate(state, pt)
            rows.append((float(x0), float(p0), rate,
                         wigner_from_count_rate(rate, state.ndim, hbar)))

    meta = _meta(args) | {
        "input": args.infile,
        "hbar": hbar,
        "lattice": "x".join(str(g.n) for g in state.grids),
        "x0_range": list(x0r),
        "p0_range": list(p0r),
        "points": npts,
        "subcell_interpolation": "fourier-shift (exact for band-limited states)",
    }
    pwfio.write_scan_csv(args.out_csv, rows, meta=meta)
    print(f"wrote {len(rows)} scan points to {args.out_csv}")


def cmd_two_photon(args) -> None:
    state = _load(args.infile, TwoPhotonState, "two-photon state")
    state = _override_units(state, args)
    meta = _meta(args) | {"input": args.infile}

    wrote = []
    if args.out or args.out_csv:
        wig = joint_wigner_two_photon(state)
        if args.out:
            pwfio.write_pwf(args.out, wig, meta=meta)
            wrote.append(args.out)
        if args.out_csv:
            pwfio.write_wigner_csv(args.out_csv, wig, meta=meta)
            wrote.append(args.out_csv)
        print(f"joint W integral={wig.integral():.12g} -> {', '.join(wrote)}")

    if args.points:
        results = []
        for quad in args.points:
            x01, p01, x02, p02 = quad
            res = two_photon_coincidence(
                state, PhaseSpacePoint(x01, p01), PhaseSpacePoint(x02, p02)
            )
            res |= {"pt1": [x01, p01], "pt2": [x02, p02]}
            results.append(res)
        text = json.dumps(results, indent=2)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        print(text)
    elif not (args.out or args.out_csv):
        raise ValidationError("give --out/--out-csv and/or --points")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonwf",
        description="Single-photon Maxwell wave function simulator",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("make-state", help="build and write a state file")
    _add_shared(p)
    p.add_argument("--kind", required=True,
                   choices=["gaussian", "single-mode", "random",
                            "hermite-gauss", "two-photon-gaussian"])
    p.add_argument("--out", required=True)
    p.add_argument("--dims", type=int, nargs=3, default=None, metavar=("NX", "NY", "NZ"))
    p.add_argument("--lengths", type=float, nargs=3, default=None, metavar=("LX", "LY", "LZ"))
    p.add_argument("--k0", type=float, nargs=3, default=None, help="wavepacket center wavenumber")
    p.add_argument("--sigma-k", type=float, default=None, help="wavepacket momentum width")
    p.add_argument("--pol", type=float, nargs=3, default=None, help="polarization vector")
    p.add_argument("--mode", type=int, nargs=3, default=None, help="FFT mode indices")
    p.add_argument("--kmax", type=float, default=None, help="band limit for the random builder")
    p.add_argument("--helicity", type=int, choices=[1, -1], default=None)
    p.add_argument("--n", type=int, default=None, help="transverse points (even)")
    p.add_argument("--length", type=float, default=None, help="transverse box length")
    p.add_argument("--n2", type=int, default=None, help="points on the second axis")
    p.add_argument("--length2", type=float, default=None, help="length of the second axis")
    p.add_argument("--order", type=int, default=None, help="Hermite-Gauss order (1D)")
    p.add_argument("--orders", type=int, nargs=2, default=None, help="Hermite-Gauss orders (2D)")
    p.add_argument("--width", type=float, default=None, help="mode width")
    p.add_argument("--corr", type=float, default=None, help="two-photon correlation in (-1,1)")
    p.set_defaults(func=cmd_make_state)

    p = sub.add_parser("evolve", help="propagate a field in time")
    _add_shared(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--t", type=float, default=None, help="evolution time (either sign)")
    p.add_argument("--dt", type=float, default=None, help="oracle stepper time step")
    p.add_argument("--method", choices=["rk4"], default=None)
    p.add_argument("--weight", choices=[w.value for w in WeightChoice], default=None,
                   help="synthesis weight when the input is a momentum amplitude")
    p.add_argument("--oracle", action="store_true", default=None,
                   help="also run the real-field RK4 path and report the deviation")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("norms", help="normalization and energy report")
    _add_shared(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="write the JSON report here too")
    p.add_argument("--weight", choices=[w.value for w in WeightChoice], default=None)
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("wigner", help="Wigner function of a transverse state")
    _add_shared(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="binary .pwf output")
    p.add_argument("--out-csv", default=None, help="long-format CSV output")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("sagnac-scan", help="displaced-parity count-rate scan")
    _add_shared(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-csv", required=True)
    p.add_argument("--x0-range", type=float, nargs=2, default=None, metavar=("MIN", "MAX"))
    p.add_argument("--p0-range", type=float, nargs=2, default=None, metavar=("MIN", "MAX"))
    p.add_argument("--scan-points", type=int, default=None, help="points per axis (default 21)")
    p.add_argument("--y0", type=float, default=None, help="fixed second-axis offset (2D states)")
    p.add_argument("--p0y", type=float, default=None, help="fixed second-axis tilt (2D states)")
    p.set_defaults(func=cmd_sagnac_scan)

    p = sub.add_parser("two-photon", help="joint Wigner / coincidence of a pair state")
    _add_shared(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="binary .pwf output of the joint W")
    p.add_argument("--out-csv", default=None, help="long-format CSV of the joint W")
    p.add_argument("--points", type=float, nargs=4, action="append", default=None,
                   metavar=("X01", "P01", "X02", "P02"),
                   help="evaluate the displaced-parity product here (repeatable)")
    p.add_argument("--report", default=None, help="write the JSON point report here too")
    p.set_defaults(func=cmd_two_photon)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        _apply_config(args)
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"numerical invariant failed: {exc}", file=sys.stderr)
        return 3
    except (FormatError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
