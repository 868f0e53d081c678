__prog_name__ = "social_capital"
__description__ = 'Measure social capital of contributors in a task-based collaboration network.'
__version__ = "1.0.0"
