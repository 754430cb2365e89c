import sys

from kroots.cli import main

sys.exit(main())
