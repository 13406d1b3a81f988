import sys

from gpkd.cli import main

sys.exit(main())
