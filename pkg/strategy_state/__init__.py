# Strategy State Package
