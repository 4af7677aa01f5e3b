import sys

from lieshape.cli import main

sys.exit(main())
