import sys

from camp_locomotion.cli import main

sys.exit(main())
