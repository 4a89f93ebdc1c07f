"""Command-line front end: subcommands, batch runner, REPL."""
