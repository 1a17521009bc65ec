"""Command-line harness: named verification suites with JSON or text reports.

Exit status is 0 iff every item of the report passes, 1 on a failing item,
and 2 on a usage error or a refused configuration.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from gmpy2 import mpq

from .exact_field import QField
from .report import CheckReport

SUITES = ("ybe", "unitarity", "crossing", "scalar-f", "rll", "gauss", "minors", "embedding",
          "drinfeld", "center", "main-map", "cartan")
DIM_CAP = 10 ** 4
NUMERIC_DEFAULTS = (3, 7, 11, 13, 17, 19, 23, 29)


class UsageError(ValueError):
    pass


class SuiteConfig:
    def __init__(self, suite, n=2, fusion=2, params=None, q_mode="symbolic", trunc=None, seed=0,
                 perturb=False):
        if suite not in SUITES + ("all",):
            raise UsageError("unknown suite %r" % suite)
        if n < 1:
            raise UsageError("n must be at least 1")
        if fusion < 1:
            raise UsageError("fusion m must be at least 1")
        if trunc is not None and trunc < 1:
            raise UsageError("truncation K must be at least 1")
        try:
            self.K = QField.from_mode(q_mode)
        except ValueError as exc:
            raise UsageError(str(exc))
        self.suite, self.n, self.m = suite, n, fusion
        self.trunc, self.seed, self.perturb = trunc, seed, perturb
        self.params = self._parse(params)

    def _parse(self, text):
        from .rep import parse_params
        if text is None:
            return None
        try:
            out = parse_params(text)
        except ValueError as exc:
            raise UsageError(str(exc))
        if len(out) != self.m:
            raise UsageError("expected %d evaluation parameters, got %d" % (self.m, len(out)))
        return out

    def symbolic_params(self):
        """Parameters for the RLL suite: names allowed."""
        from .rep import default_params
        return self.params if self.params is not None else default_params(self.m, self.K, self.seed)

    def numeric_params(self):
        """Parameters for the operator-matrix suites, which need rationals."""
        if self.params is not None and all(not isinstance(a, str) for a in self.params):
            return self.params
        start = self.seed % 4
        return [mpq(a) for a in NUMERIC_DEFAULTS[start:start + self.m]]

    def as_dict(self):
        d = {"n": self.n, "m": self.m, "q_mode": self.K.mode, "seed": self.seed}
        if self.params is not None:
            d["params"] = ",".join(str(a) for a in self.params)
        if self.trunc is not None:
            d["trunc"] = self.trunc
        if self.perturb:
            d["perturb"] = True
        return d

    def dimension(self, suite):
        """Rows of the largest flattened operator a suite builds."""
        N = 2 * self.n
        if suite in ("ybe",):
            return N ** 3
        if suite in ("unitarity", "crossing"):
            return N ** 2
        if suite in ("scalar-f", "cartan"):
            return self.n
        return N ** (self.m + 2)

    def check_dimension(self):
        suites = SUITES if self.suite == "all" else (self.suite,)
        for s in suites:
            d = self.dimension(s)
            if d > DIM_CAP:
                raise UsageError("refusing suite %s: flattened dimension %d exceeds %d"
                                 % (s, d, DIM_CAP))


def _L(cfg, symbolic=False):
    from .rep import LOperator
    params = cfg.symbolic_params() if symbolic else cfg.numeric_params()
    return LOperator(cfg.n, params, "+", cfg.K)


def _run_one(suite, cfg):
    from . import drinfeld, gauss, rep, rmatrix
    n, K, p = cfg.n, cfg.K, cfg.perturb
    if suite == "ybe":
        r = rmatrix.check_ybe("bar", n, K, p)
        rmatrix.check_ybe("full", n, K, p, report=r)
        return r
    if suite == "unitarity":
        return rmatrix.check_unitarity(n, K, p, variant="full")
    if suite == "crossing":
        return rmatrix.check_crossing("full", n, K, p, trunc=cfg.trunc or 8)
    if suite == "scalar-f":
        return rmatrix.check_scalar_f(n, K, cfg.trunc or 12, p)
    if suite == "cartan":
        return rep.check_cartan(n, 3, K, p)
    if suite == "rll":
        return rep.check_rll(_L(cfg, symbolic=True), perturb=p)
    L = _L(cfg)
    params = {"n": n, "m": cfg.m, "q_mode": K.mode,
              "params": ",".join(str(a) for a in L.params)}
    if suite == "gauss":
        return gauss.check_gauss(L, p, CheckReport("gauss", params))
    if suite == "minors":
        return gauss.check_minor_relations(L, p, CheckReport("minors", params))
    if suite == "embedding":
        return gauss.check_embedding(L, p, CheckReport("embedding", params),
                                     L3=L if n >= 3 else None)
    if suite == "center":
        return drinfeld.check_center(L, p, CheckReport("center", params))
    window = cfg.trunc or 4
    D = drinfeld.extract_drinfeld(gauss.gauss_decompose(gauss.l_matrix(L)), n, window)
    params["trunc"] = window
    if suite == "drinfeld":
        return drinfeld.check_extended_relations(D, p, CheckReport("drinfeld", params))
    if suite == "main-map":
        return drinfeld.check_main_theorem_map(D, window, min(3, window), p,
                                               CheckReport("main-map", params))
    raise UsageError("unknown suite %r" % suite)


def _worker(args):
    suite, cfg = args
    return suite, _run_one(suite, cfg)


def run_suite(cfg, workers=1):
    """Run one suite or all of them; items are reported sorted by id."""
    cfg.check_dimension()
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    report = CheckReport(cfg.suite, cfg.as_dict())
    if workers > 1 and len(suites) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = dict(ex.map(_worker, [(s, cfg) for s in suites]))
    else:
        results = {s: _run_one(s, cfg) for s in suites}
    for s in suites:
        report.extend(results[s])
    return report


def dump_matrices(cfg, directory):
    """Write the fused L(u) and its Gauss factors h_i(u) as ratu-strings."""
    from .gauss import gauss_decompose, l_matrix
    os.makedirs(directory, exist_ok=True)
    L = _L(cfg)
    M = l_matrix(L)
    F = M.F
    G = gauss_decompose(M)
    written = []

    def write(name, ops):
        path = os.path.join(directory, name)
        with open(path, "w") as fh:
            fh.write("# n=%d m=%d q_mode=%s params=%s\n" % (cfg.n, cfg.m, cfg.K.mode,
                                                          ",".join(str(a) for a in L.params)))
            fh.write("# label row col value\n")
            for label, op in ops:
                for (r, c) in sorted(op.entries):
                    fh.write("%s %d %d %s\n" % (label, r, c, F.to_ratu(op.entries[(r, c)])))
        written.append(path)

    write("L.txt", [("l_%d,%d" % (i + 1, j + 1), M[(i, j)])
                    for i in range(M.nrows) for j in range(M.ncols)])
    write("h.txt", [("h_%d" % i, G.h(i)) for i in range(1, G.size + 1)])
    return written


def build_parser():
    ap = argparse.ArgumentParser(prog="qca-verify",
                                 description="Exact verification suites for type C R-matrix "
                                             "and RLL identities.")
    ap.add_argument("--suite", required=True, choices=SUITES + ("all",))
    ap.add_argument("--n", type=int, default=2, help="rank (C^{2n} auxiliary space)")
    ap.add_argument("--fusion", type=int, default=2, help="number m of fused factors")
    ap.add_argument("--params", help="comma separated evaluation parameters (rationals or names)")
    ap.add_argument("--q-mode", default="symbolic", help="'symbolic' or 'pinned:<rational>'")
    ap.add_argument("--trunc", type=int, help="truncation or mode window K")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--out", help="write the JSON report to this file (or DIR/report.json)")
    ap.add_argument("--workers", type=int, help="parallel suites (default $QCA_WORKERS or 1)")
    ap.add_argument("--perturb", action="store_true", help="negative control: inject an error")
    ap.add_argument("--no-timing", action="store_true", help="omit millis fields from JSON")
    ap.add_argument("--dump", metavar="DIR", help="write L(u) and h_i(u) matrix dumps")
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    workers = args.workers
    if workers is None:
        try:
            workers = int(os.environ.get("QCA_WORKERS", "1"))
        except ValueError:
            ap.error("QCA_WORKERS must be an integer")
    if workers < 1:
        ap.error("--workers must be positive")
    try:
        cfg = SuiteConfig(args.suite, args.n, args.fusion, args.params, args.q_mode, args.trunc,
                          args.seed, args.perturb)
        report = run_suite(cfg, workers)
    except UsageError as exc:
        print("qca-verify: error: %s" % exc, file=sys.stderr)
        return 2
    timing = not args.no_timing
    text = report.to_json(timing) if args.format == "json" else report.to_text()
    print(text)
    if args.out:
        path = args.out
        if os.path.isdir(path):
            path = os.path.join(path, "report.json")
        with open(path, "w") as fh:
            fh.write(report.to_json(timing) + "\n")
    if args.dump:
        dump_matrices(cfg, args.dump)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
