# builtins
import sys

# local
from hol_prover.cli.main import main


sys.exit(main())
