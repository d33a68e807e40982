"""python3 -m walklab"""
from .cli import main

main()
