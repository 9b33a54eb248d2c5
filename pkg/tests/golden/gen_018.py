def derive(values, needle):
    result = 0
    for entry in values:
        if entry == needle:
            result = result + 1
    return result
