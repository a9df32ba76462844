# Copyright 2026 The acypart Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solves emitted LP files with HiGHS and feeds the solutions back through
ingest-solution; the decoded cut must equal the exact solver's optimum.

usage: highs_check.py <acypart binary> <work dir>
"""

import json
import os
import random
import subprocess
import sys

import highspy

ACYCLIC = ["proposed", "nossack", "albareda-base", "albareda-extended", "albareda-final"]


def graph_text(n, edges, weights=None):
    weights = weights or [1] * n
    lines = [f"p adag {n} {len(edges)}"]
    lines += [f"v {w}" for w in weights]
    lines += [f"e {u} {v} {c}" for u, v, c in edges]
    return "\n".join(lines) + "\n"


def random_graph(rng, n, p):
    perm = list(range(n))
    rng.shuffle(perm)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((perm[i], perm[j], rng.randint(1, 4)))
    return graph_text(n, edges, [rng.randint(1, 3) for _ in range(n)])


def run(tool, *args):
    proc = subprocess.run([tool, *args], capture_output=True, text=True)
    last = [line for line in proc.stdout.splitlines() if line.strip()]
    return proc.returncode, json.loads(last[-1]) if last else {}


def solve_lp(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    if h.readModel(path) != highspy.HighsStatus.kOk:
        raise RuntimeError(f"HiGHS could not read {path}")
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kInfeasible:
        return None
    if status != highspy.HighsModelStatus.kOptimal:
        raise RuntimeError(f"HiGHS status {h.modelStatusToString(status)} on {path}")
    values = h.getSolution().col_value
    return {h.getColName(i)[1]: values[i] for i in range(h.getNumCol())}


def main():
    tool, work = sys.argv[1], sys.argv[2]
    os.makedirs(work, exist_ok=True)
    rng = random.Random(5)
    instances = {
        "diamond": graph_text(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)]),
        "chain6": graph_text(6, [(i, i + 1, 1) for i in range(5)]),
        "crossed": graph_text(4, [(0, 2, 5), (1, 3, 5), (0, 3, 1), (1, 2, 1)]),
    }
    for i in range(6):
        instances[f"random{i}"] = random_graph(rng, 6 + i % 3, 0.35)

    failures = 0
    checked = 0
    for name, text in instances.items():
        graph = os.path.join(work, f"{name}.txt")
        with open(graph, "w") as f:
            f.write(text)
        for k, eps in ((2, "0"), (3, "0.3")):
            code, exact = run(tool, "partition", "--graph", graph, "--k", str(k), "--eps", eps)
            for form in ACYCLIC + ["undirected"]:
                lp = os.path.join(work, f"{name}_{form}_k{k}.lp")
                sol = lp[:-3] + ".sol"
                rc, _ = run(tool, "emit-lp", "--graph", graph, "--k", str(k), "--eps", eps,
                            "--formulation", form, "--output", lp)
                if rc != 0:
                    print(f"FAIL {name} {form} k={k}: emit-lp exit {rc}")
                    failures += 1
                    continue
                values = solve_lp(lp)
                checked += 1
                if values is None:
                    if exact.get("status") != "infeasible":
                        print(f"FAIL {name} {form} k={k}: HiGHS infeasible, exact solver {exact.get('status')}")
                        failures += 1
                    continue
                with open(sol, "w") as f:
                    for var, val in values.items():
                        f.write(f"{var} {round(val)}\n")
                rc, got = run(tool, "ingest-solution", "--graph", graph, "--k", str(k), "--eps", eps,
                              "--formulation", form, "--solution", sol)
                if form == "undirected":
                    ok = got.get("model_feasible") and exact.get("status") == "optimal" and got["cut"] <= exact["cut"]
                else:
                    ok = (rc == 0 and got.get("status") == "feasible" and exact.get("status") == "optimal"
                          and got["cut"] == exact["cut"] and got["model_cut"] == exact["cut"])
                if not ok:
                    print(f"FAIL {name} {form} k={k}: ingest {got}, exact {exact}")
                    failures += 1
    print(f"{checked} LP files solved with HiGHS, {failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
