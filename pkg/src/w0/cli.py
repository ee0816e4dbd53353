"""Command-line front end: ``w0 <command> [options] FILE...``.

Exit status: 0 on success, 1 on unreadable or invalid input, 2 when a
theorem-backed verification does not pass.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import geometry as geo
from .io import BoundsData, load, snc_to_json, sset_to_json
from .sscomplex import SemisimplicialSet, cohomology
from .zlinalg import CohomologyGroup, Ring, W0Error

OK, INPUT_ERROR, VERIFY_FAILED = 0, 1, 2

COMMANDS = (
    "validate", "cohomology", "dual-complex", "w0", "pair", "product",
    "kunneth", "resolution", "betti-bound", "les", "bound-check",
)
TWO_FILE = ("product", "kunneth")


@dataclass(frozen=True)
class RunConfig:
    ring: Ring = Ring.Z
    fmt: str = "text"
    max_dim: int = 32
    literal: bool = False
    h: tuple[int, ...] | None = None
    kh: tuple[int, ...] | None = None


@dataclass(frozen=True)
class JobRequest:
    command: str
    paths: tuple[str, ...]
    config: RunConfig = field(default_factory=RunConfig)


@dataclass
class Report:
    command: str
    source: str
    ring: Ring = Ring.Z
    groups: list[tuple[str, CohomologyGroup]] = field(default_factory=list)
    caption: str | None = None
    verdicts: list[dict] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)
    document: dict | None = None
    error: str | None = None
    status: int = OK

    def to_json(self) -> dict:
        out = {"command": self.command, "source": self.source, "ring": self.ring.value, "status": self.status}
        if self.error:
            out["error"] = self.error
        if self.caption:
            out["caption"] = self.caption
        if self.groups:
            out["groups"] = [
                {"name": name, **g.to_json(), "text": g.format(self.ring)} for name, g in self.groups
            ]
        if self.verdicts:
            out["verdicts"] = self.verdicts
            out["passed"] = all(v["passed"] for v in self.verdicts)
        if self.lines:
            out["summary"] = self.lines
        if self.document is not None:
            out["document"] = self.document
        return out

    def to_text(self) -> str:
        out = [f"# {self.command} {self.source}"]
        if self.error:
            out.append(f"error: {self.error}")
        out += self.lines
        if self.caption:
            out.append(f"[{self.caption}]")
        out += [f"{name} = {g.format(self.ring)}" for name, g in self.groups]
        for v in self.verdicts:
            out.append(_verdict_line(v))
        if self.verdicts:
            out.append("verdict: " + ("PASS" if all(v["passed"] for v in self.verdicts) else "FAIL"))
        return "\n".join(out)


def _verdict_line(v: dict) -> str:
    tag = "PASS" if v["passed"] else "FAIL"
    if "position" in v:
        return f"{v['position']}: exact over Q: {v['exact_Q']}, exact over Z: {v['exact_Z']}  {tag}"
    if "bound" in v:
        return f"degree {v['degree']}: dim KH = {v['kh']} <= {v['bound']}  {tag}"
    pred = "-" if v["predicted"] is None else v["predicted"]
    return f"degree {v['degree']}: computed {v['computed']}, predicted {pred} ({v['rule']})  {tag}"


# ---------------------------------------------------------------------------
# dispatch


def _dimension(obj) -> int:
    if isinstance(obj, SemisimplicialSet):
        return len(obj.levels) - 1
    if isinstance(obj, geo.SncConfiguration):
        return max((len(k) for k in obj.strata), default=1) - 1
    if isinstance(obj, geo.ResolutionData):
        return _dimension(obj.exceptional) + 1
    if isinstance(obj, geo.PairData):
        return max(_dimension(obj.ambient), _dimension(obj.closed) + 1)
    return 0


def _load(path: str, cfg: RunConfig):
    obj = load(path)
    d = _dimension(obj)
    if d > cfg.max_dim:
        raise W0Error(f"dimension {d} exceeds W0_MAX_DIM={cfg.max_dim}")
    return obj


def _nerve(obj, cfg: RunConfig) -> SemisimplicialSet:
    if isinstance(obj, SemisimplicialSet):
        return obj
    if isinstance(obj, geo.SncConfiguration):
        return geo.dual_complex(obj)
    if isinstance(obj, geo.ResolutionData):
        return geo.resolution_nerve(obj, pad=not cfg.literal)
    raise W0Error(f"{type(obj).__name__} has no single nerve; use the pair/les commands")


def _expect(obj, kind, what: str):
    if not isinstance(obj, kind):
        raise W0Error(f"expected a {what} document, got {type(obj).__name__}")
    return obj


def _groups(prefix: str, groups) -> list[tuple[str, CohomologyGroup]]:
    return [(prefix.format(i=i), g) for i, g in enumerate(groups)]


def _caption(ring: Ring) -> str | None:
    return geo.INTEGRAL_CAPTION if ring is Ring.Z else None


def _completeness_note(obj) -> list[str]:
    cfg = obj.ambient if isinstance(obj, geo.PairData) else obj
    if isinstance(cfg, geo.SncConfiguration) and not cfg.complete:
        return ["note: input declares the variety non-complete; groups are nerve cohomology, not W_0"]
    return []


def _summary(S: SemisimplicialSet) -> list[str]:
    out = [f"levels: {list(S.levels)}"]
    for n in range(1, len(S.levels)):
        for s, fs in enumerate(S.faces.get(n, ())):
            faces = ", ".join(S.label(n - 1, f) for f in fs)
            out.append(f"  {n}-simplex {S.label(n, s)}: faces ({faces})")
    return out


def run_single(command: str, path: str, cfg: RunConfig) -> Report:
    rep = Report(command, path, cfg.ring)
    try:
        if command == "validate":
            obj = load(path)
            if isinstance(obj, SemisimplicialSet):
                rep.lines.append(f"ok: semisimplicial set with levels {list(obj.levels)}")
            else:
                rep.lines.append(f"ok: {type(obj).__name__}")
            return rep
        obj = _load(path, cfg)
        if command == "cohomology":
            rep.groups = _groups("H^{i}", cohomology(_nerve(obj, cfg), cfg.ring))
            rep.caption = _caption(cfg.ring)
        elif command == "w0":
            rep.lines += _completeness_note(obj)
            if isinstance(obj, geo.PairData):
                rep.groups = _groups("KH_c^{i}(U)", geo.khc_pair(obj, cfg.ring))
            else:
                rep.groups = _groups("KH^{i}", geo.kh_complete(_nerve(obj, cfg), cfg.ring))
            rep.caption = _caption(cfg.ring)
        elif command == "pair":
            p = _expect(obj, geo.PairData, "pair")
            rep.lines += _completeness_note(p)
            rep.groups = _groups("KH_c^{i}(U)", geo.khc_pair(p, cfg.ring))
            rep.caption = _caption(cfg.ring)
        elif command == "dual-complex":
            S = geo.dual_complex(_expect(obj, geo.SncConfiguration, "snc"))
            rep.lines = _summary(S)
            rep.document = sset_to_json(S)
        elif command == "resolution":
            res = _expect(obj, geo.ResolutionData, "resolution")
            S = geo.resolution_nerve(res, pad=not cfg.literal)
            rep.lines = [f"S_{k} = {{{', '.join(level)}}}" for k, level in enumerate(res.point_chain())]
            rep.lines += _summary(S)
            rep.document = sset_to_json(S)
        elif command == "betti-bound":
            report = geo.betti_bound_report(_expect(obj, geo.ResolutionData, "resolution"))
            rep.lines = list(report.notes)
            rep.verdicts = [r.to_json() for r in report.rows]
        elif command == "les":
            report = geo.les_verify(_expect(obj, geo.PairData, "pair"))
            rep.verdicts = [{**row, "passed": row["exact_Q"] and row["exact_Z"]} for row in report.rows()]
        elif command == "bound-check":
            rep.verdicts = _bound_check(obj, cfg)
        else:
            raise W0Error(f"unknown command {command!r}")
    except (W0Error, OSError) as exc:
        rep.error = str(exc)
        rep.status = INPUT_ERROR
        return rep
    if rep.verdicts and not all(v["passed"] for v in rep.verdicts):
        rep.status = VERIFY_FAILED
    return rep


def _bound_check(obj, cfg: RunConfig) -> list[dict]:
    if isinstance(obj, BoundsData):
        kh = list(cfg.kh or obj.kh_dims)
        h = list(cfg.h or obj.h_struct_dims)
    else:
        if cfg.h is None:
            raise W0Error("bound-check on a variety document needs --h (dimensions of H^i(X, O_X))")
        h = list(cfg.h)
        kh = list(cfg.kh) if cfg.kh else [g.free_rank for g in cohomology(_nerve(obj, cfg), Ring.Q)]
        extra = kh[len(h):]
        if any(extra):
            raise W0Error(f"KH is nonzero up to degree {len(kh) - 1}; supply --h for every degree")
        kh = (kh + [0] * len(h))[: len(h)]
    return [r.to_json() for r in geo.bound_check(kh, h).rows]


def run_pair_command(command: str, paths: tuple[str, str], cfg: RunConfig) -> Report:
    rep = Report(command, " ".join(paths), cfg.ring)
    try:
        a, b = (_expect(_load(p, cfg), geo.SncConfiguration, "snc") for p in paths)
        if command == "product":
            P = geo.product_config(a, b)
            S = geo.dual_complex(P)
            rep.lines = [f"components: {len(P.components)}", f"dual complex levels: {list(S.levels)}"]
            rep.document = snc_to_json(P)
        else:
            report = geo.kunneth_verify(a, b)
            rep.verdicts = [r.to_json() for r in report.rows]
            rep.ring = Ring.Q
    except (W0Error, OSError) as exc:
        rep.error = str(exc)
        rep.status = INPUT_ERROR
        return rep
    if rep.verdicts and not all(v["passed"] for v in rep.verdicts):
        rep.status = VERIFY_FAILED
    return rep


def run(request: JobRequest, jobs: int = 1) -> list[Report]:
    cfg = request.config
    if request.command in TWO_FILE:
        if len(request.paths) != 2:
            return [Report(request.command, " ".join(request.paths), cfg.ring,
                           error=f"{request.command} takes exactly two files", status=INPUT_ERROR)]
        return [run_pair_command(request.command, request.paths, cfg)]
    if jobs > 1 and len(request.paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_single, [request.command] * len(request.paths), request.paths,
                                 [cfg] * len(request.paths)))
    return [run_single(request.command, p, cfg) for p in request.paths]


# ---------------------------------------------------------------------------
# entry point


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


EPILOG = """commands:
  validate      parse and validate documents
  cohomology    cohomology of the nerve of any single-nerve document
  w0            KH groups of a configuration, resolution or pair
  dual-complex  print the dual complex of an snc document
  resolution    print the resolution nerve (--literal: without padding)
  pair          KH_c of the open complement X - Z
  les           exactness of the pair's long exact sequence, over Z and Q
  betti-bound   KH dimensions against the exceptional dual complex
  bound-check   dim KH^i <= dim H^i(X, O_X) (bounds file, or --h)
  product       product configuration of two snc documents
  kunneth       rational ranks of a product against the convolution

exit status: 0 ok, 1 input error, 2 a verification failed
environment: W0_MAX_DIM caps the simplex dimension processed (default 32)
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="w0",
        description="Weight-zero cohomology from dual complexes.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("files", nargs="+", metavar="FILE")
    parser.add_argument("--ring", type=str.lower, choices=("z", "q"), default="z")
    parser.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    parser.add_argument("--output", metavar="PATH")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--h", type=_int_tuple, help="bound-check: dims of H^i(X, O_X), comma separated")
    parser.add_argument("--kh", type=_int_tuple, help="bound-check: override the KH dimensions")
    parser.add_argument("--literal", action="store_true",
                        help="resolution nerve without padding the singular-point chain")
    return parser


def _max_dim() -> int:
    raw = os.environ.get("W0_MAX_DIM", "32")
    try:
        return int(raw)
    except ValueError:
        raise W0Error(f"W0_MAX_DIM must be an integer, got {raw!r}") from None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; keep 2 for failed verifications
        return OK if exc.code in (0, None) else INPUT_ERROR
    try:
        max_dim = _max_dim()
    except W0Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    cfg = RunConfig(Ring.parse(args.ring), args.fmt, max_dim, args.literal, args.h, args.kh)
    reports = run(JobRequest(args.command, tuple(args.files), cfg), jobs=args.jobs)
    if args.fmt == "json":
        payload = [r.to_json() for r in reports]
        text = json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, ensure_ascii=False)
    else:
        text = "\n\n".join(r.to_text() for r in reports)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for r in reports:
        if r.error and (args.output or args.fmt == "json"):
            print(f"error: {r.source}: {r.error}", file=sys.stderr)
    return max(r.status for r in reports)


if __name__ == "__main__":
    sys.exit(main())
