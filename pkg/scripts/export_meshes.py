"""Export an OBJ mesh for every concrete family with its default parameters."""

import argparse
from pathlib import Path

from bhsym.geometry import CONCRETE_FAMILIES, SurfaceFamily, export_mesh


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out-dir", default="meshes")
    p.add_argument("--nx", type=int, default=64)
    p.add_argument("--ny", type=int, default=64)
    args = p.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for fid in CONCRETE_FAMILIES:
        fam = SurfaceFamily.create(fid)
        info = export_mesh(fid, args.nx, args.ny, out / f"{fid}.obj", fam.params)
        print(f"{fid:18} {info['vertices']:>6} vertices  {info['triangles']:>6} triangles  {info['path']}")


if __name__ == "__main__":
    main()
