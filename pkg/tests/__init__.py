# Command-line integration tests
