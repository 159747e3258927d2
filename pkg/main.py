"""Run the command line without installing the package: ``python main.py --help``."""

from app.api.cli import main

if __name__ == "__main__":
    main()
