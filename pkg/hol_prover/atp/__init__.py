"""
Cooperation with first-order provers: SZS status parsing, backend
invocation and the bundled mini prover.
"""
