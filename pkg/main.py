"""
Command-line entry point
Run with: python main.py run --case 1 --desk
"""
from dotenv import load_dotenv

from habc.cli import cli

# Load environment variables (HABC_PROFILE, HABC_THREADS, ...) from .env
load_dotenv()

if __name__ == '__main__':
    cli(prog_name='habc')
