"""
TPTP input and output: tokenizer, THF / FOF / CNF parser and printer.
"""
