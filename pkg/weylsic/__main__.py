import sys

from weylsic.cli import main

sys.exit(main())
