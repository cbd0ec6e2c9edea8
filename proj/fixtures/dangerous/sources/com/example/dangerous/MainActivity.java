package com.example.dangerous;

public class MainActivity {
    private int launches;

    public void onCreate() {
        launches += 1;
        render();
    }

    private void render() {
        StringBuilder banner = new StringBuilder();
        banner.append("launch #").append(launches);
    }
}
