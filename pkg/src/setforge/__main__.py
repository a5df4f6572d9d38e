import sys

from setforge.cli import main

sys.exit(main())
