"""
Command line surface: automatic mode and the interactive command interface.
"""
