"""covlie command line: list suites or run them and write a JSON report."""

from __future__ import annotations

import argparse
import json
import sys

from .core import WindowOverflowError
from .covariant import UnsupportedInputError
from .report import merge_reports
from .suites import REGISTRY, ConfigError, SuiteConfig, default_workers, run

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="covlie", description=__doc__)
    sub = p.add_subparsers(dest="command")

    ls = sub.add_parser("list", help="list the available suites")
    ls.add_argument("--json", action="store_true", help="machine-readable output")

    v = sub.add_parser("verify", help="run suites and report")
    v.add_argument("--suite", action="append", dest="suites", metavar="NAME",
                   help="suite to run (repeatable; default: all)")
    v.add_argument("--group", help="group spec: Z:N or Zfree (default Z:5)")
    v.add_argument("--l", type=int, help="matrix size l, S = Z_2l (default 3)")
    v.add_argument("--window-m", type=int, dest="window_m", help="degree window |m| <= M (default 2)")
    v.add_argument("--workers", type=int, help="parallel suite workers (env COVLIE_WORKERS)")
    v.add_argument("--report", metavar="PATH", help="write the JSON report here")
    v.add_argument("--audit", action="store_true", default=None,
                   help="cross-check support queries by brute force")
    v.add_argument("--config", metavar="TOML", help="read defaults from a TOML file")
    v.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    return p


def load_config(args) -> SuiteConfig:
    file_cfg = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                file_cfg = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}") from None
        unknown = set(file_cfg) - {"suites", "group", "l", "window_m", "workers", "report", "audit"}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    defaults = SuiteConfig()

    def pick(key, default):
        v = getattr(args, key, None)
        if v is not None:
            return v
        return file_cfg.get(key, default)

    workers = args.workers if args.workers is not None else file_cfg.get("workers") or default_workers()
    suites = pick("suites", [])
    if isinstance(suites, str):
        suites = [suites]
    return SuiteConfig(suites=list(suites), group=str(pick("group", defaults.group)),
                       l=int(pick("l", defaults.l)), window_m=int(pick("window_m", defaults.window_m)),
                       workers=int(workers), report=pick("report", None),
                       audit=bool(pick("audit", False)))


def list_suites(as_json: bool = False) -> str:
    if as_json:
        return json.dumps([{"name": s.name, "description": s.description} for s in REGISTRY.values()],
                          indent=2) + "\n"
    width = max(len(n) for n in REGISTRY)
    return "".join(f"{s.name:<{width}}  {s.description}\n" for s in REGISTRY.values())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in (None, "list"):
        sys.stdout.write(list_suites(getattr(args, "json", False)))
        return 0
    try:
        cfg = load_config(args)
        reports = run(cfg)
    except (ConfigError, UnsupportedInputError, WindowOverflowError) as e:
        print(f"covlie: error: {e}", file=sys.stderr)
        return 2
    combined = reports[0] if len(reports) == 1 else merge_reports(reports)
    text = combined.to_json()
    if cfg.report:
        with open(cfg.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        for rep in reports:
            for c in rep.checks:
                print(f"{c.status.upper():4}  {rep.suite}/{c.name}")
        failed = sum(1 for r in reports for c in r.checks if not c.passed)
        total = sum(len(r.checks) for r in reports)
        print(f"{total - failed}/{total} checks passed")
    return 0 if combined.passed else 1


if __name__ == "__main__":
    sys.exit(main())
