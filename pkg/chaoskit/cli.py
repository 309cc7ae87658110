#!/usr/bin/env python3
"""
chaoskit - Command Line Interface

Complex Wiener-Ito chaos calculus: verification suites, the fourth-moment
diagnostic and OU drift-estimation experiments.

Usage:
    python -m chaoskit <command> [options]

Commands:
    hermite    Print the complex Hermite polynomial J_{m,n}(z, rho)
    verify     Run verification suites and write a JSON report
    fmt        Fourth-moment-theorem diagnostic over a kernel sequence
    ou         Replicated OU drift estimation, CSV rows plus a JSON summary

Exit codes: 0 pass, 1 failure or error, 2 usage or configuration error.
"""

import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List

from .config import ConfigError, RunConfig, resolve_config
from .errors import ChaosKitError
from .hermite import eval_J, poly_J
from .moments import fmt_diagnostic, gaussian_limit_sequence
from .process import GridSpec, OUModel, run_ou_experiment
from .suites import SUITES, run_suite
from .tensor import Kernel

logger = logging.getLogger(__name__)

# rho used by `hermite --z` when --rho is not given.
DEFAULT_RHO = 1.0

OU_COLUMNS = ['replica', 'gamma_hat_re', 'gamma_hat_im', 'sqrtT_error_re', 'sqrtT_error_im']


# Load version from VERSION file
def get_version():
    version_file = Path(__file__).parent / "VERSION"
    if version_file.exists():
        return version_file.read_text().strip()
    return "1.000"


VERSION = get_version()


def write_json(report: Dict, out: str = None):
    text = json.dumps(report, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding='utf-8')
        print(f"Saved report to {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def write_csv(rows: List[Dict], columns: List[str], out: str):
    with open(out, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=columns, extrasaction='ignore')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    print(f"Saved {len(rows)} rows to {out}", file=sys.stderr)


def parse_complex(text: str) -> complex:
    """Accept 1+2j, 1+2i, -0.5j and plain reals."""
    try:
        return complex(text.replace(' ', '').replace('i', 'j'))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def format_complex(value: complex) -> str:
    return f"{value.real:.12g}{value.imag:+.12g}i"


def cmd_hermite(args, config: RunConfig) -> int:
    """Print J_{m,n} as text (or JSON with --json); with --z, its value at (z, rho)."""
    poly = poly_J(args.m, args.n, cap=config.degree_cap)
    if args.z is not None:
        rho = DEFAULT_RHO if args.rho is None else args.rho
        value = eval_J(args.m, args.n, args.z, rho, cap=config.degree_cap)
        if args.json:
            write_json({
                'm': args.m,
                'n': args.n,
                'z': {'re': args.z.real, 'im': args.z.imag},
                'rho': rho,
                'value': {'re': value.real, 'im': value.imag},
            }, config.out)
        else:
            print(format_complex(value))
        return 0

    if args.json:
        obj = poly.to_json()
        if args.rho is not None:
            obj['rho'] = args.rho
            obj['text'] = poly.to_text(args.rho)
        write_json(obj, config.out)
    else:
        print(poly.to_text(args.rho))
    return 0


def cmd_verify(args, config: RunConfig) -> int:
    """Run one or all suites; exit 1 on any failing case."""
    names = list(SUITES) if config.suite == 'all' else [config.suite]
    start = time.perf_counter()
    results = []
    for name in names:
        print(f"[verify] {name}: running", file=sys.stderr)
        result = run_suite(name, config)
        status = "ok" if result.passed else f"{len(result.failures)} FAILED"
        print(f"[verify] {name}: {result.cases} cases, max error {result.max_error:.3e}, {status}",
              file=sys.stderr)
        results.append(result)

    failures = [f"{r.suite}: {msg}" for r in results for msg in r.failures]
    report = {
        'command': 'verify',
        'config': config.echo(),
        'cases': sum(r.cases for r in results),
        'failures': failures,
        'max_error': max((r.max_error for r in results), default=0.0),
        'suites': [r.to_report() for r in results],
        'wall_time': round(time.perf_counter() - start, 3),
    }
    write_json(report, config.out)
    return 1 if failures else 0


def load_kernel_sequence(path: str) -> List[Kernel]:
    """Either {"kernels": [kernel json, ...]} or {"family": "gaussian_limit", "dims": [...]}."""
    try:
        obj = json.loads(Path(path).read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e})")
    if 'kernels' in obj:
        return [Kernel.from_json(k) for k in obj['kernels']]
    if obj.get('family') == 'gaussian_limit':
        return gaussian_limit_sequence([int(d) for d in obj['dims']])
    raise ConfigError(f"{path}: expected 'kernels' or family 'gaussian_limit'")


def cmd_fmt(args, config: RunConfig) -> int:
    """Fourth-moment diagnostic; --out receives one CSV row per kernel."""
    if args.sequence:
        kernels = load_kernel_sequence(args.sequence)
    else:
        kernels = gaussian_limit_sequence(args.dims)
    print(f"[fmt] {len(kernels)} kernels, {config.samples} samples each", file=sys.stderr)
    start = time.perf_counter()
    rows = fmt_diagnostic(kernels, config.samples, config.seed)
    records = [row.to_row() for row in rows]

    if config.out:
        columns = list(records[0])
        for rec in records[1:]:
            columns += [c for c in rec if c not in columns]
        write_csv(records, columns, config.out)

    report = {
        'command': 'fmt',
        'config': config.echo(),
        'rows': records,
        'wall_time': round(time.perf_counter() - start, 3),
    }
    write_json(report, args.summary)
    return 0


def cmd_ou(args, config: RunConfig) -> int:
    """Replicated drift estimation; --out receives the per-replica CSV."""
    model = OUModel(args.lam, args.omega, args.a, args.hurst)
    grid = GridSpec(args.T, args.steps)
    print(f"[ou] {args.replicas} replicas, T={grid.T:g}, N={grid.N}, H={model.hurst:g}",
          file=sys.stderr)
    start = time.perf_counter()
    experiment = run_ou_experiment(model, grid, args.replicas, config.seed, config.workers)
    if config.out:
        write_csv(experiment.rows, OU_COLUMNS, config.out)

    config.extra.update({'lambda': args.lam, 'omega': args.omega, 'a': args.a,
                         'hurst': args.hurst, 'T': args.T, 'steps': args.steps,
                         'replicas': args.replicas})
    report = {
        'command': 'ou',
        'config': config.echo(),
        'summary': experiment.summary,
        'wall_time': round(time.perf_counter() - start, 3),
    }
    write_json(report, args.summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='chaoskit',
        description=f"chaoskit v{VERSION} - Complex Wiener-Ito chaos calculus",
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument('--version', action='version', version=f'chaoskit v{VERSION}')

    # Flags shared by every command; None means "not given" so the config file can fill in.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='Debug logging and tracebacks')
    common.add_argument('--config', help='key = value configuration file')
    common.add_argument('--seed', type=int, help='Master seed (64-bit)')
    common.add_argument('--workers', type=int, help='Worker threads')
    common.add_argument('--out', help='Output file')
    common.add_argument('--tol', type=float, help='Override every suite tolerance')
    common.add_argument('--degree-cap', dest='degree_cap', type=int, help='Largest polynomial degree')
    common.add_argument('--cases', type=int, help='Random cases per suite block')
    common.add_argument('--samples', type=int, help='Monte Carlo samples')

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    # hermite
    p_her = subparsers.add_parser('hermite', parents=[common], help='Print J_{m,n}')
    p_her.add_argument('--m', type=int, required=True, help='Holomorphic degree')
    p_her.add_argument('--n', type=int, required=True, help='Antiholomorphic degree')
    p_her.add_argument('--rho', type=float, help='Bind rho in the printed polynomial (default for --z: 1)')
    p_her.add_argument('--z', type=parse_complex, help='Evaluate at this point, e.g. 1+1j')
    p_her.add_argument('--json', action='store_true', help='Print the term list or value as JSON')

    # verify
    p_ver = subparsers.add_parser('verify', parents=[common], help='Run verification suites')
    p_ver.add_argument('--suite', required=True, choices=list(SUITES) + ['all'], help='Suite name')

    # fmt
    p_fmt = subparsers.add_parser('fmt', parents=[common], help='Fourth-moment diagnostic')
    p_fmt.add_argument('--sequence', help='JSON kernel sequence fixture')
    p_fmt.add_argument('--dims', type=int, nargs='+', default=[1, 2, 4, 8, 16],
                       help='Dimensions of the Gaussian-limit family when no --sequence is given')
    p_fmt.add_argument('--summary', help='Write the JSON summary here instead of stdout')

    # ou
    p_ou = subparsers.add_parser('ou', parents=[common], help='OU drift estimation experiment')
    p_ou.add_argument('--lambda', dest='lam', type=float, default=1.0, help='Real part of gamma')
    p_ou.add_argument('--omega', type=float, default=0.0, help='Minus the imaginary part of gamma')
    p_ou.add_argument('--a', type=float, default=1.0, help='Noise intensity')
    p_ou.add_argument('--hurst', type=float, default=0.5, help='Hurst index in [0.5, 0.75)')
    p_ou.add_argument('--T', type=float, default=50.0, help='Horizon')
    p_ou.add_argument('--steps', type=int, default=5000, help='Grid steps')
    p_ou.add_argument('--replicas', type=int, default=100, help='Independent replicas')
    p_ou.add_argument('--summary', help='Write the JSON summary here instead of stdout')

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        print("\nExamples:")
        print("  python -m chaoskit hermite --m 1 --n 1")
        print("  python -m chaoskit hermite --m 2 --n 1 --rho 2 --z 1+1j")
        print("  python -m chaoskit verify --suite product --seed 7")
        print("  python -m chaoskit verify --suite all --seed 7 --out report.json")
        print("  python -m chaoskit fmt --sequence fixture.json --samples 100000 --seed 1 --out report.csv")
        print("  python -m chaoskit ou --lambda 1 --omega 0.5 --T 200 --steps 20000 --seed 3 --out results.csv")
        sys.exit(0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    # Execute command
    commands = {
        'hermite': cmd_hermite,
        'verify': cmd_verify,
        'fmt': cmd_fmt,
        'ou': cmd_ou,
    }

    try:
        config = resolve_config(args)
        status = commands[args.command](args, config)
    except ConfigError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        sys.exit(2)
    except (ChaosKitError, OSError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        sys.exit(1)
    sys.exit(status)


if __name__ == '__main__':
    main()
