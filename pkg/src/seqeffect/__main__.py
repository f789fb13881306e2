import sys

from seqeffect.cli import main

sys.exit(main())
