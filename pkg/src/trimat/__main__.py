from trimat.cli import main

main()
