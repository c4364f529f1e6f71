import sys

from syllogist.cli.main import main

sys.exit(main())
