import sys

from lambda_pt.cli import main

sys.exit(main())
