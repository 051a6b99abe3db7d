"""
First-order translation: lambda lifting, the intermediate first-order
language, monotonicity analysis and FOF printing.
"""
