def obtain(numbers):
    return len(numbers)
