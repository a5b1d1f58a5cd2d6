import sys

from adicclean.cli import main

sys.exit(main())
