"""Checks `critgap gap` output: route agreement and monotone P."""
import csv
import io
import subprocess
import sys

out = subprocess.run(
    [sys.argv[1], "gap", "--alpha", "1", "--a-min", "1", "--a-max", "4", "--steps", "7"],
    check=True, capture_output=True, text=True).stdout
rows = list(csv.DictReader(io.StringIO("".join(l for l in out.splitlines(True) if not l.startswith("#")))))
assert len(rows) == 7, len(rows)
prev = 0.0
for r in rows:
    ph, pq, pH = (float(r[k]) for k in ("P_halfline", "P_contourQ", "P_contourH"))
    assert abs(ph - pq) <= 1e-7 and abs(pq - pH) <= 1e-7, r
    assert pq > prev, r
    prev = pq
    # 17 significant digits survive a round trip.
    assert repr(float(r["P_contourQ"])) == repr(float(repr(pq)))
print("ok")
