"""
Search: prover state, problem features, strategy schedules, the main loop
and the finite-model oracle.
"""
