from django.contrib import admin
from django.urls import path

urlpatterns = [
    # census runs and their records are browsable here
    path('admin/', admin.site.urls),
]
