from hgd.cli import main
import sys

sys.exit(main())
