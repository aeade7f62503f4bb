"""Setup the entrypoint to the CLI if executing the module."""

from table_reward.cli import main

if __name__ == '__main__':
    # Run the CLI.
    main()
