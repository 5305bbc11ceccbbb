from curveword.cli import main

main()
