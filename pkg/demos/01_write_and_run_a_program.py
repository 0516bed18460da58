"""Build a small table program three ways and rasterize it.

The same program is constructed from AST nodes, parsed from text, and
round-tripped through the canonical printer; all three execute to the
identical 32x32x32 occupancy grid.
"""
import numpy as np

from voxscript import (DrawStmt, ForStmt, Program, Semantics, ShapeKind,
                       execute_program, parse_text, print_text)

leg = DrawStmt(Semantics.LEG, ShapeKind.CUBOID, (9, 0, 9), (20, 2, 2))
legs = ForStmt.translation(2, (12, 0, 0), (
    ForStmt.translation(2, (0, 0, 12), (leg,)),
))
top = DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (8, 20, 8), (2, 16, 16))
table = Program((top, legs))

text = print_text(table)
print("canonical text:")
print(text)

reparsed = parse_text(text)
assert reparsed == table

grid = execute_program(table)
print(f"grid dims {grid.shape}, {int(grid.sum())} occupied voxels")
assert (execute_program(reparsed) == grid).all()

# A top-down silhouette: any occupied voxel in a column marks the cell.
print("top view (x right, z down):")
for z in range(grid.shape[2]):
    row = "".join("#" if grid[x, :, z].any() else "." for x in range(grid.shape[0]))
    print(" ", row)
