"""Drive the command line end to end and inspect the report files."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

scratch = Path(tempfile.mkdtemp(prefix="ceed-demo-"))
lexicon_path = scratch / "fixture.lex"
out_dir = scratch / "reports"


def run(*arguments: str) -> None:
    command = [sys.executable, "-m", "ceed.cli", *arguments]
    print("$", " ".join(command[2:]))
    done = subprocess.run(command, capture_output=True, text=True)
    sys.stdout.write(done.stdout)
    if done.returncode != 0:
        sys.stderr.write(done.stderr)
        raise SystemExit(done.returncode)


run(
    "build-lexicon",
    "--titles", str(DATA / "titles.txt"),
    "--anchors", str(DATA / "anchors.tsv"),
    "--out", str(lexicon_path),
)
run(
    "full",
    "--input", str(DATA / "tweets_200.jsonl"),
    "--lexicon", str(lexicon_path),
    "--out", str(out_dir),
    "--window-start", "2025-03-01T00:00:00Z",
    "--window-end", "2025-03-11T00:00:00Z",
    "--dump-bursty",
)

print("\nreport files:")
for path in sorted(out_dir.iterdir()):
    print(f"  {path.name:<22} {path.stat().st_size:>6} bytes")

manifest = json.loads((out_dir / "manifest.json").read_text(encoding="utf-8"))
print("\nmanifest counts:", json.dumps(manifest["counts"]))
events = json.loads((out_dir / "events.json").read_text(encoding="utf-8"))
print("detected events:")
for event in events["events"]:
    print(
        f"  {event['id']}  score={event['eventworthiness']}  "
        f"label={event['label']!r}"
    )
print(f"\nreports left in {out_dir} for inspection")
