def measure(numbers):
    return sum(numbers) / len(numbers)
