"""Grid-refinement tables for the three closed-form solutions.

    python3 scripts/convergence_study.py --levels 4 --out convergence.json
"""

import argparse
from dataclasses import replace

from bhsym.config import EXAMPLE_SETUPS
from bhsym.numeric import Grid, convergence_order, refinement, write_json
from bhsym.reductions import example_solution

SURFACE_FOR = {1: "cylinder", 2: "pseudosphere", 3: "paraboloid"}


def study(n: int, levels: int, nx: int | None) -> dict:
    sol = example_solution(n)
    setup = EXAMPLE_SETUPS[SURFACE_FOR[n]]
    cfg = replace(setup.grid, levels=levels, **({"nx": nx, "ny": nx} if nx else {}))
    params = {**setup.constants, **setup.profile_params}
    grids = refinement(Grid(*cfg.x_range, cfg.nx, cfg.ny), cfg.levels)
    result = convergence_order(sol.f, sol.u, grids, cfg.t, params)
    print(f"example {n} on the {SURFACE_FOR[n]}")
    for g, row in zip(grids, result.table()):
        local = "" if row["local_order"] is None else f"{row['local_order']:.3f}"
        print(f"  {g.nx:>4}  h={row['h']:.5f}  max={row['max_norm']:.3e}  floor={row['rounding_floor']:.1e}  {local}")
    order = result.order if result.exact else round(result.order, 4)
    print(f"  order: {order}")
    return {"example": n, "surface": SURFACE_FOR[n], **result.to_dict()}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--nx", type=int, help="coarsest grid size (default from the example setup)")
    p.add_argument("--out", help="write the tables as JSON")
    args = p.parse_args()
    rows = [study(n, args.levels, args.nx) for n in (1, 2, 3)]
    if args.out:
        write_json(args.out, rows)


if __name__ == "__main__":
    main()
