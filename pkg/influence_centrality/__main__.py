"""Entry point for running as a module."""

from influence_centrality.cli import main

if __name__ == '__main__':
    main()
