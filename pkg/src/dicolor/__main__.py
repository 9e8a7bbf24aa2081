import sys

from dicolor.cli import main

sys.exit(main())
