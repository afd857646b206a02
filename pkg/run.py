from stationary_lab import create_app

app = create_app()

if __name__ == "__main__":
    app()
