"""Judge shapes physically: does it tip over, is it in one piece?

Stability drops a plumb line from the center of mass and asks whether it
lands inside the convex hull of the ground contacts. Connectivity counts
26-adjacent components.
"""
import numpy as np

from voxscript import (analyze_dataset, execute_program, format_analysis_table,
                       parse_text, stability_report)

table = execute_program(parse_text("""\
draw(Top, Cub, P=(8,20,8), G=(2,16,16))
for(Trans, i=2, u=(12,0,0)) {
  for(Trans, i=2, u=(0,0,12)) {
    draw(Leg, Cub, P=(9,0,9), G=(20,2,2))
  }
}
"""))

# long slab on a single off-center 1x1 column: tips over
cantilever = np.zeros((32, 32, 32), dtype=bool)
cantilever[2, 0:6, 2] = True
cantilever[2:21, 6:8, 1:4] = True

# floating table top plus a stray corner pedestal: two components, and
# the combined center of mass misses the pedestal's tiny footprint
orphan = np.zeros((32, 32, 32), dtype=bool)
orphan[8:24, 20:22, 8:24] = True
orphan[2:4, 0:3, 2:4] = True

for name, grid in (("table", table), ("cantilever", cantilever),
                   ("orphan top", orphan)):
    rep = stability_report(grid)
    com = tuple(round(c, 2) for c in rep.center_of_mass)
    print(f"{name:12s} stable={rep.stable!s:5s} connected={rep.connected!s:5s}"
          f" components={rep.component_count} com={com}")

print()
print(format_analysis_table(analyze_dataset([table, cantilever, orphan])))
