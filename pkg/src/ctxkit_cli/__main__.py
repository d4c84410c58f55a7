"""CLI entry point for running as python -m ctxkit_cli."""

from .cli import main

if __name__ == '__main__':
    main()
