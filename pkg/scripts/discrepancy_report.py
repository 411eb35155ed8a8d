"""Write the derived-versus-printed comparison as text and JSON."""

import argparse

from bhsym.discrepancies import build_report
from bhsym.numeric import write_json


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="also write the entries here")
    args = p.parse_args()
    report = build_report(seed=args.seed)
    print(report.to_text())
    print(f"\n{len(report.differing())} of {len(report.entries)} entries differ")
    if args.json:
        write_json(args.json, report.to_dict())


if __name__ == "__main__":
    main()
