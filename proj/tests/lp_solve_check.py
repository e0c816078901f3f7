#!/usr/bin/env python3
# Copyright 2026 The teamform Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Solve an LP file written by `teamform emit-ilp` with scipy's MILP solver.

Only the subset of the CPLEX LP format the emitter produces is understood:
a single linear objective, linear rows with <=, >= or =, simple lower bounds
and a Binary section. Prints one JSON object: {"status": ..., "objective": ...}.
Exit status 3 means scipy is not available.
"""

import json
import sys


def parse_expr(tokens):
    terms = []
    sign = 1.0
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("+", "-"):
            sign = -1.0 if tok == "-" else 1.0
            i += 1
            continue
        coef = float(tok)
        terms.append((sign * coef, tokens[i + 1]))
        sign = 1.0
        i += 2
    return terms


def parse_lp(text):
    section = None
    objective = []
    rows = []
    lower = {}
    binary = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        lowered = line.lower()
        if lowered in ("minimize", "maximize"):
            if lowered == "maximize":
                raise ValueError("maximize is not supported")
            section = "obj"
            continue
        if lowered == "subject to":
            section = "rows"
            continue
        if lowered == "bounds":
            section = "bounds"
            continue
        if lowered == "binary":
            section = "binary"
            continue
        if lowered == "end":
            break
        if section == "obj":
            _, expr = line.split(":", 1)
            objective = parse_expr(expr.split())
        elif section == "rows":
            name, expr = line.split(":", 1)
            tokens = expr.split()
            sense, rhs = tokens[-2], float(tokens[-1])
            rows.append((name.strip(), parse_expr(tokens[:-2]), sense, rhs))
        elif section == "bounds":
            var, op, value = line.split()
            if op != ">=":
                raise ValueError("unsupported bound: " + line)
            lower[var] = float(value)
        elif section == "binary":
            binary.update(line.split())
    return objective, rows, lower, binary


def solve(text):
    try:
        import numpy as np
        from scipy.optimize import Bounds, LinearConstraint, milp
    except ImportError:
        print(json.dumps({"status": "unavailable"}))
        return 3

    objective, rows, lower, binary = parse_lp(text)
    names = []
    index = {}

    def var(name):
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for _, v in objective:
        var(v)
    for _, terms, _, _ in rows:
        for _, v in terms:
            var(v)
    for v in sorted(binary):
        var(v)

    n = len(names)
    c = np.zeros(n)
    for coef, v in objective:
        c[index[v]] += coef
    A = np.zeros((len(rows), n))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (_, terms, sense, rhs) in enumerate(rows):
        for coef, v in terms:
            A[r, index[v]] += coef
        if sense == "<=":
            hi[r] = rhs
        elif sense == ">=":
            lo[r] = rhs
        else:
            lo[r] = hi[r] = rhs

    integrality = np.array([1 if v in binary else 0 for v in names])
    lb = np.array([0.0 if v in binary else lower.get(v, 0.0) for v in names])
    ub = np.array([1.0 if v in binary else np.inf for v in names])
    constraints = [LinearConstraint(A, lo, hi)] if rows else []
    res = milp(c, constraints=constraints, integrality=integrality, bounds=Bounds(lb, ub),
               options={"mip_rel_gap": 0.0})
    if res.status == 0:
        print(json.dumps({"status": "optimal", "objective": float(res.fun)}))
    elif res.status == 2:
        print(json.dumps({"status": "infeasible"}))
    else:
        print(json.dumps({"status": "error", "message": res.message}))
        return 1
    return 0


def main(argv):
    if len(argv) != 2:
        print("usage: lp_solve_check.py MODEL.lp", file=sys.stderr)
        return 2
    with open(argv[1]) as fh:
        return solve(fh.read())


if __name__ == "__main__":
    sys.exit(main(sys.argv))
