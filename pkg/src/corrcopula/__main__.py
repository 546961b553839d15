from corrcopula.cli import main

main()
