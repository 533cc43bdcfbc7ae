import sys

from htk.cli import main

sys.exit(main())
