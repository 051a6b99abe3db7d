'''
Prove TPTP problems from a checkout without installing the package.
Takes the same arguments as the hol-prover command.
'''

# builtins
import sys

# local
from hol_prover.cli.main import main


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
