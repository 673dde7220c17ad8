#  Copyright (c) 2022 Robert Lieck.
import sys

from bgkflow.cli import main

if __name__ == '__main__':
    sys.exit(main())
