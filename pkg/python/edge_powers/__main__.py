from edge_powers.cli import main

if __name__ == "__main__":
    main()
