#!/usr/bin/env python
"""Command-line entry point for the Pythagorean won-loss toolkit."""
import os
import sys


def main():
    """Run a pythag management command."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'pythagwl.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the dependencies with "
            "'pip install -r requirements.txt' and check that the virtual "
            "environment is active."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
