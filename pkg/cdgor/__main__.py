"""Entry point for `python -m cdgor`."""

from .cli import main

if __name__ == "__main__":
    main()
