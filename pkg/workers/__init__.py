# Command-line experiment runner
