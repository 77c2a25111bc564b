"""Regenerate the JSON files under src/kg2/data from the bundled factories."""
import json
from pathlib import Path

from kg2.bundled import BUNDLED, THETAS, empty_core_seed

OUT = Path(__file__).resolve().parents[1] / "src" / "kg2" / "data"


def write(name, obj):
    path = OUT / name
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")
    print(path)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, make in THETAS.items():
        write(f"theta_{name}.json", make().to_json())
    for name, make in BUNDLED.items():
        write(f"{name}.json", make().to_json())
    write("empty_core.json", empty_core_seed().to_json())


if __name__ == "__main__":
    main()
