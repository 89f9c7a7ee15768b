import sys

from hopftwist.runner import main


if __name__ == '__main__':
    sys.exit(main())
