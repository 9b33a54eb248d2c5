def gather(numbers):
    return len(numbers) == 0
