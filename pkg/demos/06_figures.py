"""Period heat maps of the sine and quadratic families with tongue overlays.

Writes CSV sweeps and standalone SVG renderings to demos/out/.  Regions of
constant colour are the Arnold tongues; boundaries from the solver are drawn
on top of the quadratic map.
"""

from pathlib import Path

from fareytongues import (SweepConfig, farey_atlas, quadratic_family,
                          render_svg, run_atlas, write_atlas_csv,
                          write_tongues_csv)

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

print("sine family sweep (slope vs cut) ...")
cfg = SweepConfig(family="sine", width=160, height=160,
                  alpha_min=0.30, alpha_max=1.20,
                  second_min=0.05, second_max=3.00,
                  max_period=32, burn_in=4000)
res = run_atlas(cfg)
write_atlas_csv(res, out / "sine_atlas.csv")
render_svg(out / "sine_atlas.csv", out / "sine_atlas.svg", cell=4)
print("  wrote", out / "sine_atlas.svg")

print("quadratic family sweep with tongue boundaries at three slopes ...")
cfg = SweepConfig(family="quadratic", width=160, height=160,
                  alpha_min=0.05, alpha_max=0.49,
                  second_min=0.02, second_max=0.98,
                  max_period=32, burn_in=4000)
res = run_atlas(cfg)
write_atlas_csv(res, out / "quadratic_atlas.csv")

overlays = []
for alpha in (0.15, 0.30, 0.45):
    tongues = farey_atlas(quadratic_family(alpha), depth=4)
    path = out / f"quadratic_tongues_{alpha:.2f}.csv"
    write_tongues_csv(tongues, path)
    overlays.append((alpha, path))
render_svg(out / "quadratic_atlas.csv", out / "quadratic_atlas.svg",
           tongue_overlays=overlays, cell=4)
print("  wrote", out / "quadratic_atlas.svg")
