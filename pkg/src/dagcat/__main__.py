import sys

from dagcat.cli import main

sys.exit(main())
