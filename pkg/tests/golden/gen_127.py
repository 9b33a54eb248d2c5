def resolve(numbers):
    return sorted(numbers)
