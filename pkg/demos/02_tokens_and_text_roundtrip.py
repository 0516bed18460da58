"""Show the two serialized forms of a program and that both invert cleanly.

Text is for people; the fixed-width token rows (one id plus seven
argument slots per step) are for sequence models. Draw ids pack the
(semantics, shape) pair into a single number.
"""
import json

from voxscript import (Axis, DrawStmt, ForStmt, Program, Semantics, ShapeKind,
                       detokenize, print_text, tokenize)
from voxscript.dsl.tokens import (format_token_lines, parse_token_lines,
                                  token_program_to_json, vocabulary)

chair = Program((
    DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (10, 12, 10), (2, 12, 12)),
    ForStmt.rotation(4, 90, Axis.Y, (
        DrawStmt(Semantics.LEG, ShapeKind.CUBOID, (11, 0, 11), (12, 2, 2)),
    )),
    DrawStmt(Semantics.BACK, ShapeKind.CUBOID, (10, 14, 10), (10, 12, 2)),
))

print("text form:")
print(print_text(chair))

tok = tokenize(chair)
print("token rows (id a1..a7):")
print(format_token_lines(tok))

vocab = vocabulary()
print("step meanings:")
for step in tok.steps:
    print(f"  {step.id:3d} -> {vocab[step.id]}")

assert detokenize(tok) == chair
assert parse_token_lines(format_token_lines(tok)) == tok
print("detokenize(tokenize(p)) == p and the line format round-trips")

doc = token_program_to_json(tok)
print(f"JSON container: n_ids={doc['n_ids']} n_args={doc['n_args']}"
      f" steps={len(doc['steps'])}")
print(json.dumps(doc["steps"][0]))
