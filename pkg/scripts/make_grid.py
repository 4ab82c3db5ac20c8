"""Regenerate scenarios/standard_grid.json from hodgerr.verify.standard_grid()."""
import json
import pathlib

from hodgerr.verify import standard_grid

out = pathlib.Path(__file__).resolve().parent.parent / "scenarios" / "standard_grid.json"
out.write_text(json.dumps({"scenarios": standard_grid()}, indent=1) + "\n")
print(f"wrote {out}")
