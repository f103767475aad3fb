"""python -m iso4d"""
from .main import main

main()
