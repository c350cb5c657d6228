import sys

from rootstrata.cli import main

sys.exit(main())
