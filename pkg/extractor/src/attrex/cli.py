import argparse
import logging
import sys
from pathlib import Path

from .models import ModelLoadError
from .runner import ExtractionJob, extract_attributions


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="extract",
        description="Export per-token sentiment attributions as CSV")
    parser.add_argument("--input", required=True, help="one sentence per line")
    parser.add_argument("--model", required=True,
                        help="model identifier (stub, stub:<seed>, hf:<name>)")
    parser.add_argument("--out", required=True, help="attribution CSV path")
    parser.add_argument("--batch", type=int, default=16)
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")

    input_path = Path(args.input)
    if not input_path.exists():
        print(f"missing file: {input_path}", file=sys.stderr)
        return 2

    try:
        job = ExtractionJob(input_path=input_path, model_id=args.model,
                            output_path=Path(args.out), batch_size=args.batch)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        summary = extract_attributions(job)
    except ModelLoadError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return 1

    print(f"{summary.rows} rows from {summary.sentences} sentences "
          f"({summary.failures} failed) -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
