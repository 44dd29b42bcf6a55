import sys

from nashgate.cli import main

sys.exit(main())
