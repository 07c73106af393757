"""Axiom codes shared by the compiled and fallback kernels.

Both kernel backends scan the axioms in the numeric order below and
within each axiom in lexicographic (i, j, k) order, so the first reported
violation is identical across backends.
"""

OK = 0
ZERO_IDENTITY = 1
ADD_INVERSE = 2
ONE_IDENTITY = 3
ADD_COMMUTATIVITY = 4
ADD_ASSOCIATIVITY = 5
MUL_ASSOCIATIVITY = 6
LEFT_DISTRIBUTIVITY = 7
RIGHT_DISTRIBUTIVITY = 8

NAMES = {
    ZERO_IDENTITY: "zero-identity",
    ADD_INVERSE: "additive-inverse",
    ONE_IDENTITY: "one-identity",
    ADD_COMMUTATIVITY: "add-commutativity",
    ADD_ASSOCIATIVITY: "add-associativity",
    MUL_ASSOCIATIVITY: "mul-associativity",
    LEFT_DISTRIBUTIVITY: "left-distributivity",
    RIGHT_DISTRIBUTIVITY: "right-distributivity",
}
