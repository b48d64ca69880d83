import sys

from ceerlab.cli import main

sys.exit(main())
